#include "spinq/pointwise.hpp"

#include <cmath>

namespace spinq {

NumForm NumForm::zero(int n, int degree) {
  NumForm f;
  f.n = n;
  f.degree = degree;
  f.c.assign(binomial(n, degree), 0.0);
  return f;
}

double& NumForm::at(const Indices& idx) { return c[tuple_rank(idx, n)]; }

double NumForm::get(const Indices& idx) const {
  Indices sorted = idx;
  int sign = sort_sign(sorted);
  if (sign == 0) return 0.0;
  return sign * c[tuple_rank(sorted, n)];
}

NumForm NumForm::operator+(const NumForm& o) const {
  NumForm r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
  return r;
}

NumForm NumForm::operator-(const NumForm& o) const {
  NumForm r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
  return r;
}

NumForm NumForm::operator*(double s) const {
  NumForm r = *this;
  for (auto& v : r.c) v *= s;
  return r;
}

NumForm NumForm::operator-() const { return *this * -1.0; }

double NumForm::max_abs() const {
  double m = 0;
  for (double v : c) m = std::max(m, std::fabs(v));
  return m;
}

NumForm num_wedge(const NumForm& a, const NumForm& b) {
  NumForm out = NumForm::zero(a.n, a.degree + b.degree);
  if (a.degree + b.degree > a.n) return out;
  auto ta = increasing_tuples(a.n, a.degree);
  auto tb = increasing_tuples(b.n, b.degree);
  Indices merged;
  for (size_t i = 0; i < ta.size(); ++i) {
    if (a.c[i] == 0.0) continue;
    for (size_t j = 0; j < tb.size(); ++j) {
      if (b.c[j] == 0.0) continue;
      int sign = merge_sign(ta[i], tb[j], merged);
      if (sign == 0) continue;
      out.c[tuple_rank(merged, a.n)] += sign * a.c[i] * b.c[j];
    }
  }
  return out;
}

NumForm num_hodge(const NumForm& a) {
  NumForm out = NumForm::zero(a.n, a.n - a.degree);
  auto ta = increasing_tuples(a.n, a.degree);
  Indices comp;
  for (size_t i = 0; i < ta.size(); ++i) {
    if (a.c[i] == 0.0) continue;
    int sign = complement_sign(ta[i], a.n, comp);
    out.c[tuple_rank(comp, a.n)] += sign * a.c[i];
  }
  return out;
}

NumForm num_interior(const Eigen::VectorXd& x, const NumForm& a) {
  NumForm out = NumForm::zero(a.n, a.degree - 1);
  auto ta = increasing_tuples(a.n, a.degree);
  for (size_t i = 0; i < ta.size(); ++i) {
    if (a.c[i] == 0.0) continue;
    const Indices& idx = ta[i];
    for (size_t j = 0; j < idx.size(); ++j) {
      double xv = x(idx[j] - 1);
      if (xv == 0.0) continue;
      Indices rest;
      for (size_t t = 0; t < idx.size(); ++t)
        if (t != j) rest.push_back(idx[t]);
      double sgn = (j % 2 == 0) ? 1.0 : -1.0;
      out.c[tuple_rank(rest, a.n)] += sgn * xv * a.c[i];
    }
  }
  return out;
}

double num_pair(const NumForm& a, const NumForm& b) {
  double s = 0;
  for (size_t i = 0; i < a.c.size(); ++i) s += a.c[i] * b.c[i];
  return s;
}

NumForm restrict_to_frame(const Form& ambient, const Point& p, const Eigen::MatrixXd& legs) {
  int k = static_cast<int>(legs.rows());
  int deg = ambient.degree();
  NumForm out = NumForm::zero(k, deg);
  auto sub_tuples = increasing_tuples(k, deg);
  for (const auto& [idx, c] : ambient.coefficients()) {
    double v = c.eval(p.values);
    if (v == 0.0) continue;
    // minor determinants of the legs against this ambient index set
    Eigen::MatrixXd cols(k, deg);
    for (int q = 0; q < deg; ++q) cols.col(q) = legs.col(idx[q] - 1);
    for (size_t t = 0; t < sub_tuples.size(); ++t) {
      Eigen::MatrixXd minor(deg, deg);
      for (int r = 0; r < deg; ++r) minor.row(r) = cols.row(sub_tuples[t][r] - 1);
      double det = deg ? minor.determinant() : 1.0;
      out.c[t] += v * det;
    }
  }
  return out;
}

Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& seed, const Eigen::MatrixXd& kernel,
                                  int target_rows) {
  int m = static_cast<int>(seed.cols() ? seed.cols() : kernel.cols());
  std::vector<Eigen::VectorXd> basis;
  auto add = [&](Eigen::VectorXd v) {
    for (int r = 0; r < kernel.rows(); ++r) {
      Eigen::VectorXd kr = kernel.row(r);
      v -= (v.dot(kr) / kr.squaredNorm()) * kr;
    }
    for (const auto& b : basis) v -= v.dot(b) * b;
    double nrm = v.norm();
    if (nrm > 1e-9) basis.push_back(v / nrm);
  };
  for (int r = 0; r < seed.rows(); ++r) add(seed.row(r));
  for (int i = 0; i < m && static_cast<int>(basis.size()) < target_rows; ++i)
    add(Eigen::VectorXd::Unit(m, i));
  if (static_cast<int>(basis.size()) != target_rows)
    throw std::domain_error("orthonormal_frame: degenerate seed");
  Eigen::MatrixXd out(target_rows, m);
  for (int r = 0; r < target_rows; ++r) out.row(r) = basis[r];
  return out;
}

NumForm num_project2_g2_7part(const NumG2& s, const NumForm& a) {
  NumForm sap = num_hodge(num_wedge(a, s.phi));
  return (a + sap) * (1.0 / 3.0);
}

NumThreeSplit num_project3_g2(const NumG2& s, const NumForm& c) {
  NumThreeSplit out{NumForm::zero(7, 3), NumForm::zero(7, 3), NumForm::zero(7, 3)};
  out.part1 = s.phi * (num_pair(c, s.phi) / 7.0);
  std::vector<NumForm> basis;
  for (int i = 0; i < 7; ++i) {
    NumForm ei = NumForm::zero(7, 1);
    ei.c[i] = 1.0;
    basis.push_back(num_hodge(num_wedge(ei, s.phi)));
  }
  Eigen::MatrixXd gram(7, 7);
  Eigen::VectorXd rhs(7);
  for (int i = 0; i < 7; ++i) {
    rhs(i) = num_pair(basis[i], c);
    for (int j = 0; j < 7; ++j) gram(i, j) = num_pair(basis[i], basis[j]);
  }
  Eigen::VectorXd x = gram.ldlt().solve(rhs);
  for (int i = 0; i < 7; ++i) out.part7 = out.part7 + basis[i] * x(i);
  out.part27 = c - out.part1 - out.part7;
  return out;
}

NumG2Torsion num_g2_torsion(const NumG2& s, const NumForm& dphi, const NumForm& dstar_phi) {
  NumG2Torsion t;
  t.tau0 = num_pair(dphi, s.star_phi) / 7.0;
  t.tau1 = num_hodge(num_wedge(num_hodge(dphi), s.phi)) * (-1.0 / 12.0);
  t.tau3 = num_hodge(dphi - s.star_phi * t.tau0 - num_wedge(t.tau1, s.phi) * 3.0);
  t.tau2 = -num_hodge(dstar_phi - num_wedge(t.tau1, s.star_phi) * 4.0);
  NumForm r1 = dphi - (s.star_phi * t.tau0 + num_wedge(t.tau1, s.phi) * 3.0 + num_hodge(t.tau3));
  NumForm r2 = dstar_phi - (num_wedge(t.tau1, s.star_phi) * 4.0 + num_wedge(t.tau2, s.phi));
  NumForm r3 = num_wedge(t.tau2, s.star_phi);
  NumForm r4 = num_wedge(t.tau3, s.phi);
  t.max_residual = std::max({r1.max_abs(), r2.max_abs(), r3.max_abs(), r4.max_abs()});
  return t;
}

NumSpin7Torsion num_spin7_torsion(const NumSpin7& s, const NumForm& dPhi) {
  NumSpin7Torsion t;
  t.T1 = num_hodge(num_wedge(num_hodge(dPhi), s.Phi)) * (-1.0 / 7.0);
  t.T5 = dPhi - num_wedge(t.T1, s.Phi);
  t.membership_residual = num_wedge(num_hodge(t.T5), s.Phi).max_abs();
  return t;
}

NumForm num_project2_spin7_7part(const NumSpin7& s, const NumForm& a) {
  NumForm sap = num_hodge(num_wedge(a, s.Phi));
  return (a + sap) * 0.25;
}

NumForm num_insert_i(const NumSpin7& s, const Eigen::MatrixXd& h) {
  NumForm out = NumForm::zero(8, 4);
  for (int a = 0; a < 8; ++a) {
    NumForm ea = NumForm::zero(8, 1);
    ea.c[a] = 1.0;
    NumForm acc = NumForm::zero(8, 3);
    for (int b = 0; b < 8; ++b) {
      if (h(a, b) == 0.0) continue;
      NumForm eb = NumForm::zero(8, 1);
      eb.c[b] = 1.0;
      acc = acc + num_hodge(num_wedge(eb, s.Phi)) * h(a, b);
    }
    out = out + num_wedge(ea, acc) * 2.0;
  }
  return out;
}

Eigen::MatrixXd num_extract_j(const NumSpin7& s, const NumForm& K) {
  std::vector<std::pair<int, int>> pairs;
  std::vector<NumForm> images;
  for (int a = 0; a < 8; ++a)
    for (int b = a; b < 8; ++b) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(8, 8);
      e(a, b) = 1.0;
      e(b, a) = 1.0;
      pairs.emplace_back(a, b);
      images.push_back(num_insert_i(s, e));
    }
  int n = static_cast<int>(pairs.size());
  Eigen::MatrixXd gram(n, n);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    rhs(i) = num_pair(images[i], K);
    for (int j = i; j < n; ++j) {
      gram(i, j) = num_pair(images[i], images[j]);
      gram(j, i) = gram(i, j);
    }
  }
  Eigen::VectorXd x = gram.ldlt().solve(rhs);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(8, 8);
  for (int i = 0; i < n; ++i) {
    auto [a, b] = pairs[i];
    out(a, b) += x(i);
    if (a != b) out(b, a) += x(i);
  }
  return out;
}

Eigen::MatrixXd hitchin_J(const NumForm& omega_plus) {
  // K(X) determined by (i_X Om) ^ Om = (i_{K(X)} vol); J = K / sqrt(-tr K^2 / 6)
  int n = 6;
  Eigen::MatrixXd K(n, n);
  NumForm vol = NumForm::zero(6, 6);
  vol.c[0] = 1.0;
  for (int b = 0; b < n; ++b) {
    Eigen::VectorXd eb = Eigen::VectorXd::Unit(n, b);
    NumForm five = num_wedge(num_interior(eb, omega_plus), omega_plus);
    // i_{e_a} vol has coefficient (-1)^{a} on the tuple missing a... recover
    // K(e_b) components by pairing: i_X vol = sum_a X^a * i_{e_a} vol
    for (int a = 0; a < n; ++a) {
      Eigen::VectorXd ea = Eigen::VectorXd::Unit(n, a);
      NumForm iv = num_interior(ea, vol);
      K(a, b) = num_pair(five, iv) / num_pair(iv, iv);
    }
  }
  double tr = (K * K).trace();
  if (tr >= 0) throw std::domain_error("hitchin_J: 3-form is not stable of complex type");
  return K / std::sqrt(-tr / 6.0);
}

Eigen::MatrixXd su3_metric(const NumForm& omega, const Eigen::MatrixXd& J) {
  int n = 6;
  Eigen::MatrixXd g(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // g(e_a, e_b) = omega(e_a, J e_b)
      Eigen::VectorXd jb = J.col(b);
      NumForm ia = num_interior(Eigen::VectorXd::Unit(n, a), omega);
      double v = 0;
      for (int k = 0; k < n; ++k) v += jb(k) * ia.c[k];
      g(a, b) = v;
    }
  return g;
}

}  // namespace spinq
