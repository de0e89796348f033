#include "spinq/spin7.hpp"

#include <cmath>

#include "spinq/exact_linalg.hpp"
#include "spinq/g2.hpp"

namespace spinq {

Form standard_Phi0(const AlgebraPtr& alg) {
  if (alg->dim() != 8) throw std::domain_error("spin7: model form needs an 8-dimensional chart");
  Form phi = standard_phi0(alg, 1);  // on legs 2..8
  // Hodge dual of phi0 inside the 7 legs, embedded into the 8-dim chart
  Form star7 = Form::zero(alg, 4);
  {
    // complement within {2..8} of each 3-index tuple of phi0
    for (const auto& [idx, c] : phi.coefficients()) {
      Indices rel;
      for (int i : idx) rel.push_back(i - 1);
      Indices comp;
      int sign = complement_sign(rel, 7, comp);
      Indices abs;
      for (int i : comp) abs.push_back(i + 1);
      star7 += Form::term(alg, abs, sign > 0 ? c : -c);
    }
  }
  return wedge(alg->coframe(1), phi) + star7;
}

static std::vector<Point> validation_points(const AlgebraPtr& alg) {
  if (!alg->sample_points().empty()) return alg->sample_points();
  if (alg->generators().empty()) return {Point{}};
  return random_points(alg, 5, 1);
}

static void check_zero(const Form& f, const AlgebraPtr& alg, double tol, const char* what) {
  if (f.is_zero()) return;
  auto pts = validation_points(alg);
  for (const auto& p : pts)
    if (max_coefficient_deviation(f, Form::zero(alg, f.degree()), p) > tol)
      throw std::domain_error(std::string("spin7: ") + what);
}

Spin7Structure::Spin7Structure(AlgebraPtr alg, Form Phi, double tol) : alg_(std::move(alg)) {
  if (alg_->dim() != 8) throw std::domain_error("spin7: structure needs an 8-dimensional chart");
  if (Phi.degree() != 4) throw std::domain_error("spin7: defining form must have degree 4");
  check_zero(Rational(1, 14) * wedge(Phi, Phi) - alg_->volume(), alg_, tol,
             "Phi ^ Phi != 14 vol");
  check_zero(hodge(Phi) - Phi, alg_, tol, "Phi is not self-dual");
  Phi_ = std::move(Phi);
}

TwoFormSplitSpin7 project2_spin7(const Spin7Structure& s, const Form& a) {
  if (a.degree() != 2) throw std::domain_error("project2_spin7: need a 2-form");
  Form sap = hodge(wedge(a, s.Phi()));
  Form p7 = Rational(1, 4) * (a + sap);
  Form p21 = Rational(1, 4) * (Rational(3) * a - sap);
  return {p7, p21};
}

Form insert_i(const Spin7Structure& s, const SymTensor& h) {
  const AlgebraPtr& alg = s.algebra();
  Form out = Form::zero(alg, 4);
  for (int a = 1; a <= 8; ++a) {
    Form eb_sum = Form::zero(alg, 3);
    for (int b = 1; b <= 8; ++b) {
      const Scalar& hv = h.at(a - 1, b - 1);
      if (hv.is_zero()) continue;
      eb_sum += hv * hodge(wedge(alg->coframe(b), s.Phi()));
    }
    out += Rational(2) * wedge(alg->coframe(a), eb_sum);
  }
  return out;
}

SymTensor extract_j(const Spin7Structure& s, const Form& K) {
  if (K.degree() != 4) throw std::domain_error("extract_j: need a 4-form");
  const AlgebraPtr& alg = s.algebra();
  // basis of image(i): i(E_ab) for a <= b, E_ab the elementary symmetric tensors
  std::vector<std::pair<int, int>> pairs;
  std::vector<Form> images;
  for (int a = 0; a < 8; ++a)
    for (int b = a; b < 8; ++b) {
      SymTensor e = SymTensor::zero(alg);
      e.at(a, b) = Scalar(1);
      e.at(b, a) = Scalar(1);
      pairs.emplace_back(a, b);
      images.push_back(insert_i(s, e));
    }
  size_t n = pairs.size();
  std::vector<std::vector<Scalar>> gram(n, std::vector<Scalar>(n, Scalar(0)));
  std::vector<Scalar> rhs(n, Scalar(0));
  for (size_t i = 0; i < n; ++i) {
    rhs[i] = metric_pair(images[i], K);
    for (size_t j = i; j < n; ++j) {
      gram[i][j] = metric_pair(images[i], images[j]);
      gram[j][i] = gram[i][j];
    }
  }
  std::vector<Scalar> x = solve_linear(std::move(gram), std::move(rhs));
  SymTensor out = SymTensor::zero(alg);
  for (size_t i = 0; i < n; ++i) {
    auto [a, b] = pairs[i];
    out.at(a, b) += x[i];
    if (a != b) out.at(b, a) += x[i];
  }
  return out;
}

Spin7Torsion spin7_torsion_from(const Spin7Structure& s, const Form& dPhi) {
  Spin7Torsion t;
  t.dPhi = dPhi;
  // 7 *T1 = *(dPhi) ^ Phi, and ** = -1 on 7-forms in dimension 8
  t.T1 = Rational(-1, 7) * hodge(wedge(hodge(dPhi), s.Phi()));
  t.T5 = dPhi - wedge(t.T1, s.Phi());
  t.residual_membership = wedge(hodge(t.T5), s.Phi());
  return t;
}

Spin7Torsion spin7_torsion(const Spin7Structure& s) {
  return spin7_torsion_from(s, d(s.Phi()));
}

double Spin7Torsion::max_residual(const std::vector<Point>& pts) const {
  double m = 0;
  for (const auto& p : pts)
    m = std::max(m, max_coefficient_deviation(
                        residual_membership,
                        Form::zero(residual_membership.algebra(), residual_membership.degree()), p));
  return m;
}

const char* to_string(Spin7Class c) {
  switch (c) {
    case Spin7Class::TorsionFree: return "torsion_free";
    case Spin7Class::Balanced: return "balanced";
    case Spin7Class::LocallyConformallyParallel: return "locally_conformally_parallel";
    case Spin7Class::Generic: return "generic";
  }
  return "?";
}

Spin7Class classify_from(const Spin7Torsion& t, const std::vector<Point>& pts, double tol) {
  auto vanishes = [&](const Form& f) {
    if (f.is_zero()) return true;
    for (const auto& p : pts)
      if (max_coefficient_deviation(f, Form::zero(f.algebra(), f.degree()), p) > tol) return false;
    return true;
  };
  bool t1 = vanishes(t.T1);
  bool t5 = vanishes(t.T5);
  if (t1 && t5) return Spin7Class::TorsionFree;
  if (t1) return Spin7Class::Balanced;
  if (t5) return Spin7Class::LocallyConformallyParallel;
  return Spin7Class::Generic;
}

Spin7Class classify(const Spin7Structure& s, double tol) {
  return classify_from(spin7_torsion(s), validation_points(s.algebra()), tol);
}

Scalar scal_from_torsion(const Spin7Structure& s, const Spin7Torsion& t) {
  Scalar delta_t1(0);
  {
    Form dt = codiff(t.T1);  // 0-form
    delta_t1 = dt.coefficient({});
  }
  return Rational(7, 2) * delta_t1 + Rational(21, 8) * norm_sq(t.T1) -
         Rational(1, 2) * norm_sq(t.T5);
}

SymTensor ricci_from_torsion(const Spin7Structure& s, const Spin7Torsion& t) {
  const AlgebraPtr& alg = s.algebra();
  Scalar delta_t1 = codiff(t.T1).coefficient({});
  Scalar trace_coeff = Rational(5, 8) * delta_t1 + Rational(3, 8) * norm_sq(t.T1) -
                       Rational(2, 7) * norm_sq(t.T5);
  SymTensor out = SymTensor::identity(alg).scaled(trace_coeff);

  Form j_arg = Scalar(Rational(-3)) * codiff(wedge(t.T1, s.Phi())) +
               Rational(4) * codiff(t.T5) - Rational(2) * wedge(t.T1, hodge(t.T5)) -
               Rational(9, 4) * wedge(hodge(wedge(t.T1, s.Phi())), t.T1);
  out = out + extract_j(s, j_arg);

  Form star_t5 = hodge(t.T5);
  for (int a = 0; a < 8; ++a) {
    VectorField ea{alg, std::vector<Scalar>(8, Scalar(0))};
    ea.components[a] = Scalar(1);
    Form ia = interior(ea, star_t5);
    for (int b = a; b < 8; ++b) {
      VectorField eb{alg, std::vector<Scalar>(8, Scalar(0))};
      eb.components[b] = Scalar(1);
      Scalar v = Rational(1, 2) * metric_pair(ia, interior(eb, star_t5));
      out.at(a, b) += v;
      if (a != b) out.at(b, a) += v;
    }
  }
  return out;
}

}  // namespace spinq
