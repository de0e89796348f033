#include "spinq/curvature.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

namespace spinq {

Form ConnectionForms::structure_residual(int a) const {
  Form r = d(alg->coframe(a));
  for (int b = 1; b <= alg->dim(); ++b) r += wedge(omega[a - 1][b - 1], alg->coframe(b));
  return r;
}

ConnectionForms levi_civita(const AlgebraPtr& alg) {
  int n = alg->dim();
  // expansion coefficients d(theta^a) = sum_{b<c} C[a][bc] theta^b ^ theta^c
  auto C = [&](int a, int b, int c) -> Scalar {
    if (b == c) return Scalar(0);
    Scalar v = alg->structure(a).coefficient({std::min(b, c), std::max(b, c)});
    return b < c ? v : -v;
  };
  ConnectionForms conn{alg, std::vector<std::vector<Form>>(
                                n, std::vector<Form>(n, Form::zero(alg, 1)))};
  // Gamma_{abc} = (C_{abc} + C_{bca} - C_{cab}) / 2 with omega^a_b = Gamma_{abc} theta^c
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      if (a == b) continue;
      Form w = Form::zero(alg, 1);
      for (int c = 1; c <= n; ++c) {
        Scalar g = Rational(1, 2) * (C(a, b, c) + C(b, c, a) - C(c, a, b));
        if (!g.is_zero()) w += g * alg->coframe(c);
      }
      conn.omega[a - 1][b - 1] = w;
    }
  return conn;
}

CurvatureForms riemann(const ConnectionForms& c) {
  const AlgebraPtr& alg = c.alg;
  int n = alg->dim();
  CurvatureForms out{alg,
                     std::vector<std::vector<Form>>(n, std::vector<Form>(n, Form::zero(alg, 2)))};
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Form f = d(c.omega[a][b]);
      for (int k = 0; k < n; ++k) f += wedge(c.omega[a][k], c.omega[k][b]);
      out.F[a][b] = f;
      out.F[b][a] = -f;
    }
  return out;
}

Form CurvatureForms::first_bianchi_residual(int a) const {
  Form r = Form::zero(alg, 3);
  for (int b = 1; b <= alg->dim(); ++b) r += wedge(F[a - 1][b - 1], alg->coframe(b));
  return r;
}

// Ric_{ab} = sum_c F^c_a(e_c, e_b), unsymmetrized
static std::vector<std::vector<Scalar>> ricci_raw(const CurvatureForms& F) {
  int n = F.alg->dim();
  std::vector<std::vector<Scalar>> raw(n, std::vector<Scalar>(n, Scalar(0)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Scalar v(0);
      for (int c = 0; c < n; ++c) {
        if (c == a) continue;
        v += F.F[c][a].coefficient({c + 1, b + 1});
      }
      raw[a][b] = v;
    }
  return raw;
}

SymTensor ricci_lc(const CurvatureForms& F) {
  auto raw = ricci_raw(F);
  int n = F.alg->dim();
  SymTensor ric = SymTensor::zero(F.alg);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      ric.at(a, b) = Rational(1, 2) * (raw[a][b] + raw[b][a]);
  return ric;
}

Scalar ricci_asymmetry_norm_sq(const CurvatureForms& F) {
  auto raw = ricci_raw(F);
  int n = F.alg->dim();
  Scalar s(0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Scalar dif = raw[a][b] - raw[b][a];
      s += dif * dif;
    }
  return s;
}

Scalar scal_lc(const CurvatureForms& F) {
  int n = F.alg->dim();
  Scalar s(0);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      if (c == a) continue;
      s += F.F[c][a].coefficient({c + 1, a + 1});
    }
  return s;
}

HolonomyRank holonomy_span_rank(const CurvatureForms& F, const std::vector<Point>& pts) {
  int n = F.alg->dim();
  auto pairs = increasing_tuples(n, 2);
  // rows: F(e_c, e_d) per point; cols: so(n) entries (a<b)
  Eigen::MatrixXd M(static_cast<int>(pts.size() * pairs.size()), static_cast<int>(pairs.size()));
  int row = 0;
  for (const auto& p : pts) {
    // evaluate every curvature form once per point
    std::vector<std::map<Indices, double>> vals(pairs.size());
    for (size_t ab = 0; ab < pairs.size(); ++ab)
      vals[ab] = eval_at(F.F[pairs[ab][0] - 1][pairs[ab][1] - 1], p).values;
    for (size_t cd = 0; cd < pairs.size(); ++cd) {
      for (size_t ab = 0; ab < pairs.size(); ++ab) {
        auto it = vals[ab].find(pairs[cd]);
        M(row, static_cast<int>(ab)) = (it == vals[ab].end()) ? 0.0 : it->second;
      }
      ++row;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  double top = sv.size() ? sv(0) : 0.0;
  HolonomyRank out;
  if (top == 0.0) return out;
  auto rank_at = [&](double thresh) {
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > thresh * top) ++r;
    return r;
  };
  out.rank = rank_at(1e-8);
  out.stable = (rank_at(1e-6) == rank_at(1e-10));
  if (!out.stable) out.rank = rank_at(1e-8);
  return out;
}

double curvature_norm_sq_at(const CurvatureForms& F, const Point& p) {
  int n = F.alg->dim();
  double acc = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (const auto& [idx, c] : F.F[a][b].coefficients()) {
        double v = c.eval(p.values);
        acc += 2 * v * v;  // both (a,b) and (b,a)
      }
  return acc;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace spinq
