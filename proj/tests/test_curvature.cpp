#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "spinq/curvature.hpp"

using namespace spinq;

namespace {

// the round 4-sphere chart: de1 = (2/R)e23 + (w/R)e14 and cyclic, de4 = 0,
// with dR = -w e4, dw = R e4 and the sample constraint w = sqrt(1 - R^2)
std::shared_ptr<FrameAlgebra> sphere4() {
  auto a = FrameAlgebra::create(4, {});
  Scalar R = Scalar::generator("R"), w = Scalar::generator("w");
  Scalar invR = R.pow(Rational(-1));
  auto t2 = [&](int i, int j) { return Form::term(a, {i, j}, Scalar(1)); };
  a->declare_structure(1, (Rational(2) * invR) * t2(2, 3) + (w * invR) * t2(1, 4));
  a->declare_structure(2, (Rational(2) * invR) * t2(3, 1) + (w * invR) * t2(2, 4));
  a->declare_structure(3, (Rational(2) * invR) * t2(1, 2) + (w * invR) * t2(3, 4));
  a->declare_generator("R", true, (-w) * a->coframe(4));
  a->declare_generator("w", true, R * a->coframe(4));
  std::mt19937_64 rng(3);
  std::vector<Point> pts;
  for (int k = 0; k < 8; ++k) {
    double R0 = 0.25 + 0.65 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    Point p;
    p.values["R"] = R0;
    p.values["w"] = std::sqrt(1.0 - R0 * R0);
    pts.push_back(p);
  }
  a->set_sample_points(pts);
  return a;
}

double max_dev(const Form& f, const std::vector<Point>& pts) {
  double m = 0;
  for (const auto& p : pts)
    m = std::max(m, max_coefficient_deviation(f, Form::zero(f.algebra(), f.degree()), p));
  return m;
}

}  // namespace

TEST_CASE("flat chart has vanishing connection and curvature") {
  auto a = FrameAlgebra::create(7, {});
  ConnectionForms c = levi_civita(a);
  for (int i = 1; i <= 7; ++i) {
    CHECK(c.structure_residual(i).is_zero());
    for (int j = 1; j <= 7; ++j) CHECK(c.omega[i - 1][j - 1].is_zero());
  }
  CurvatureForms F = riemann(c);
  CHECK(scal_lc(F).is_zero());
  auto rank = holonomy_span_rank(F, {Point{}});
  CHECK(rank.rank == 0);
}

TEST_CASE("round 4-sphere: connection, curvature, scalar 12, rank 6") {
  auto a = sphere4();
  CHECK(a->check_integrability(a->sample_points()).exact_zero);
  ConnectionForms c = levi_civita(a);
  // the connection matrix entries (exact): omega^1_2 = (1/R)e3, etc.
  Scalar invR = Scalar::generator("R").pow(Rational(-1));
  Scalar w = Scalar::generator("w");
  CHECK(equals_exact(c.omega[0][1], invR * a->coframe(3)));
  CHECK(equals_exact(c.omega[0][2], -(invR)*a->coframe(2)));
  CHECK(equals_exact(c.omega[0][3], -(w * invR) * a->coframe(1)));
  CHECK(equals_exact(c.omega[1][2], invR * a->coframe(1)));
  CHECK(equals_exact(c.omega[1][3], -(w * invR) * a->coframe(2)));
  CHECK(equals_exact(c.omega[2][3], -(w * invR) * a->coframe(3)));
  for (int i = 1; i <= 4; ++i) CHECK(c.structure_residual(i).is_zero());

  CurvatureForms F = riemann(c);
  const auto& pts = a->sample_points();
  // unit-sphere pattern F^a_b = e^{ab} at the constrained sample points
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      CHECK(max_dev(F.F[i - 1][j - 1] - Form::term(a, {i, j}, Scalar(1)), pts) < 1e-12);
  for (int i = 1; i <= 4; ++i) CHECK(max_dev(F.first_bianchi_residual(i), pts) < 1e-12);
  CHECK(ricci_asymmetry_norm_sq(F).eval(pts[0].values) < 1e-12);
  SymTensor ric = ricci_lc(F);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double want = (i == j) ? 3.0 : 0.0;
      CHECK(std::fabs(ric.at(i, j).eval(pts[0].values) - want) < 1e-12);
    }
  CHECK(std::fabs(scal_lc(F).eval(pts[0].values) - 12.0) < 1e-12);
  // constant curvature: span of curvature endomorphisms is all of so(4)
  auto rank = holonomy_span_rank(F, pts);
  CHECK(rank.rank == 6);
  CHECK(rank.stable);
}

TEST_CASE("stereographic 7-sphere chart is Einstein with scalar 42") {
  auto a = FrameAlgebra::create(7, {});
  std::vector<Scalar> y;
  for (int i = 1; i <= 7; ++i) y.push_back(Scalar::generator("y" + std::to_string(i)));
  for (int i = 1; i <= 7; ++i) {
    Form de = Form::zero(a, 2);
    for (int j = 1; j <= 7; ++j)
      if (j != i) de += y[j - 1] * Form::term(a, {i, j}, Scalar(1));
    a->declare_structure(i, de);
  }
  Scalar D(1);
  for (int i = 0; i < 7; ++i) D += y[i] * y[i];
  for (int i = 1; i <= 7; ++i)
    a->declare_generator("y" + std::to_string(i), false, (Rational(1, 2) * D) * a->coframe(i));
  auto pts = random_points(a, 4, 19, 0.05, 0.6);
  CHECK(a->check_integrability(pts).exact_zero);
  ConnectionForms c = levi_civita(a);
  for (int i = 1; i <= 7; ++i) CHECK(c.structure_residual(i).is_zero());
  CurvatureForms F = riemann(c);
  SymTensor ric = ricci_lc(F);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      Scalar want = (i == j) ? Scalar(6) : Scalar(0);
      CHECK((ric.at(i, j) - want).is_zero());
    }
  CHECK((scal_lc(F) - Scalar(42)).is_zero());
  auto rank = holonomy_span_rank(F, {pts[0]});
  CHECK(rank.rank == 21);
}

TEST_CASE("log log slope fit") {
  std::vector<double> x, yv;
  for (int i = 1; i <= 30; ++i) {
    double t = 10.0 + 33.0 * i;
    x.push_back(t);
    yv.push_back(5.0 * std::pow(t, 2.5));
  }
  CHECK(std::fabs(log_log_slope(x, yv) - 2.5) < 1e-9);
}
