#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinq/curvature.hpp"
#include "spinq/quotient.hpp"

using namespace spinq;

namespace {

G2Structure flat_g2() {
  std::shared_ptr<FrameAlgebra> a = FrameAlgebra::create(7, {});
  return G2Structure(a, standard_phi0(a));
}

// flat T^6 Calabi-Yau data
struct CYData {
  AlgebraPtr z6;
  SU3Triple cy;
};
CYData flat_cy6() {
  std::shared_ptr<FrameAlgebra> z = FrameAlgebra::create(6, {});
  CYData d;
  d.z6 = z;
  d.cy.omega = Form::term(z, {1, 2}, Scalar(1)) + Form::term(z, {3, 4}, Scalar(1)) +
               Form::term(z, {5, 6}, Scalar(1));
  d.cy.omega_plus = Form::term(z, {1, 3, 5}, Scalar(1)) - Form::term(z, {1, 4, 6}, Scalar(1)) -
                    Form::term(z, {2, 3, 6}, Scalar(1)) - Form::term(z, {2, 4, 5}, Scalar(1));
  d.cy.omega_minus = Form::term(z, {1, 3, 6}, Scalar(1)) + Form::term(z, {1, 4, 5}, Scalar(1)) +
                     Form::term(z, {2, 3, 5}, Scalar(1)) - Form::term(z, {2, 4, 6}, Scalar(1));
  return d;
}

bool all_pass(const std::vector<Residual>& rs, double tol, bool want_exact) {
  for (const auto& r : rs) {
    if (want_exact && !r.exact_zero) return false;
    if (!r.pass(tol)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("trivial product assembles the model 4-form") {
  G2Structure g = flat_g2();
  QuotientData q(g, Scalar(1), Form::zero(g.algebra(), 2));
  Spin7Structure s8 = q.assemble();
  CHECK(equals_exact(s8.Phi(), standard_Phi0(q.total())));
  CHECK(classify(s8) == Spin7Class::TorsionFree);
  // round trip through reduce with the fibre field
  ReducedData r = reduce(s8, q.fibre_field(), {Point{}});
  CHECK(r.lie_exact_zero);
  CHECK((r.s - Scalar(1)).is_zero());
  CHECK(equals_exact(r.eta, q.eta()));
  CHECK(equals_exact(q.lower(r.phi), g.phi()));
  CHECK(equals_exact(q.lower(r.starphi_rep), g.star_phi()));
  // transfer rules and torsion relations hold exactly with zero torsion
  CHECK(all_pass(hodge_transfer_check(q, {Point{}}), 1e-12, true));
  CHECK(all_pass(torsion_relations(q, {Point{}}), 1e-12, true));
  CHECK(all_pass(torsion_budget(q, {Point{}}), 1e-12, true));
  CHECK(submersion_scalar_check(q, {Point{}}).exact_zero);
}

TEST_CASE("calabi construction over the flat six-torus") {
  CYData cy = flat_cy6();
  CalabiAnsatz ca = calabi_ansatz(cy.z6, cy.cy, "s");
  const QuotientData& q = ca.data;
  auto pts = q.base().algebra()->sample_points();
  REQUIRE(!pts.empty());

  Spin7Structure s8 = q.assemble();
  // closed 4-form, so the structure is torsion free
  CHECK(d(s8.Phi()).is_zero());
  CHECK(classify(s8) == Spin7Class::TorsionFree);
  // Phi = 1/2 omega_hat^2 + Re(Omega_hat)
  Form recon = Rational(1, 2) * wedge(ca.omega_hat, ca.omega_hat) + ca.re_omega_hat;
  CHECK(equals_exact(s8.Phi(), recon));
  // the curvature equations of the torsion-free case hold exactly
  CHECK(all_pass(torsion_free_curvature_equations(q, pts), 1e-12, true));
  // transfer rules and the full relation set, exact
  CHECK(all_pass(hodge_transfer_check(q, pts), 1e-12, true));
  CHECK(all_pass(torsion_relations(q, pts), 1e-12, true));
  CHECK(all_pass(torsion_budget(q, pts), 1e-12, true));
  // round trip
  ReducedData r = reduce(s8, q.fibre_field(), pts);
  CHECK((r.s - q.s()).is_zero());
  CHECK(equals_exact(q.lower(r.phi), q.base().phi()));
}

TEST_CASE("degenerate calabi input is rejected") {
  CYData cy = flat_cy6();
  SU3Triple zero_omega = cy.cy;
  zero_omega.omega = Form::zero(cy.z6, 2);
  CHECK_THROWS(calabi_ansatz(cy.z6, zero_omega, "s"));
  SU3Triple bad = cy.cy;
  bad.omega_plus = Rational(2) * bad.omega_plus;
  CHECK_THROWS(calabi_ansatz(cy.z6, bad, "s"));
}

TEST_CASE("balanced lift over the nil 5-manifold base") {
  // legs 1..7 = (e0, e1, e2, e3, e4, e7, e6), de4 = e02 + e31
  std::shared_ptr<FrameAlgebra> a =
      FrameAlgebra::create(7, {"e0", "e1", "e2", "e3", "e4", "e7", "e6"});
  a->declare_structure(5, Form::term(a, {1, 3}, Scalar(1)) + Form::term(a, {4, 2}, Scalar(1)));
  auto lbl = [&](int i) {
    const int map[] = {1, 2, 3, 4, 5, -1, 7, 6};
    return map[i];
  };
  auto t3 = [&](int i, int j, int k, int sign) {
    return Form::term(a, {lbl(i), lbl(j), lbl(k)}, Scalar(sign));
  };
  Form phi = t3(1, 3, 7, 1) + t3(1, 0, 4, 1) + t3(1, 6, 2, 1) + t3(3, 0, 6, 1) + t3(3, 2, 4, 1) +
             t3(7, 0, 2, -1) + t3(7, 4, 6, -1);
  G2Structure g(a, phi);
  auto t2 = [&](int i, int j, const Rational& c) {
    return Form::term(a, {lbl(i), lbl(j)}, Scalar(c));
  };
  // the stated 7-part of the curvature: (2/3)(e03 + e12 - e47)
  G2Torsion tau = g2_torsion(g);
  Form expected7 = t2(0, 3, Rational(2, 3)) + t2(1, 2, Rational(2, 3)) + t2(4, 7, Rational(-2, 3));
  CHECK(equals_exact(Rational(-4) * hodge(wedge(tau.tau1, g.star_phi())), expected7));

  // first curvature choice: lambda = (1/3)(e03 + e12 + 2 e47), d(eta) = e03 + e12
  Form lambda1 = t2(0, 3, Rational(1, 3)) + t2(1, 2, Rational(1, 3)) + t2(4, 7, Rational(2, 3));
  QuotientData q1 = balanced_lift(g, lambda1);
  CHECK(equals_exact(q1.deta(), t2(0, 3, Rational(1)) + t2(1, 2, Rational(1))));
  Spin7Structure s1 = q1.assemble();
  Spin7Torsion tor1 = spin7_torsion(s1);
  CHECK(tor1.T1.is_zero());
  CHECK(!tor1.T5.is_zero());
  CHECK(classify(s1) == Spin7Class::Balanced);
  CHECK(balanced_curvature_equation(q1, {}).exact_zero);
  CHECK(all_pass(hodge_transfer_check(q1, {}), 1e-12, true));
  CHECK(all_pass(torsion_relations(q1, {}), 1e-12, true));
  CHECK(all_pass(torsion_budget(q1, {}), 1e-12, true));
  CHECK(submersion_scalar_check(q1, {}).exact_zero);

  // second choice: lambda = (2/3)(2 e12 - e03 + e47), d(eta) = 2 e12
  Form lambda2 = t2(1, 2, Rational(4, 3)) + t2(0, 3, Rational(-2, 3)) + t2(4, 7, Rational(2, 3));
  QuotientData q2 = balanced_lift(g, lambda2);
  CHECK(equals_exact(q2.deta(), t2(1, 2, Rational(2))));
  CHECK(classify(q2.assemble()) == Spin7Class::Balanced);

  // a 7-part lambda is rejected
  Form bad = interior(VectorField{a, {Scalar(1), Scalar(0), Scalar(0), Scalar(0), Scalar(0),
                                      Scalar(0), Scalar(0)}},
                      g.phi());
  CHECK_THROWS(balanced_lift(g, bad));
}

TEST_CASE("gibbons-hawking flat cylinder") {
  std::shared_ptr<FrameAlgebra> a = FrameAlgebra::create(4, {"eta", "b1", "b2", "b3"});
  GibbonsHawking gh = gibbons_hawking(a, Scalar(1), {Point{}});
  CHECK(gh.monopole.exact_zero);
  for (const auto& r : gh.closedness) CHECK(r.exact_zero);
  for (const auto& r : gh.quaternion_relations) CHECK(r.exact_zero);
  // non-monopole data is rejected
  std::shared_ptr<FrameAlgebra> b = FrameAlgebra::create(4, {"eta", "b1", "b2", "b3"});
  b->declare_structure(1, Form::term(b, {2, 3}, Scalar(1)));
  CHECK_THROWS(gibbons_hawking(b, Scalar(1), {Point{}}));
}

TEST_CASE("reduce rejects a non-invariant field") {
  std::shared_ptr<FrameAlgebra> a = FrameAlgebra::create(8, {});
  a->declare_generator("x", false, a->coframe(2));
  Spin7Structure s(a, standard_Phi0(a));
  VectorField bad{a, std::vector<Scalar>(8, Scalar(0))};
  bad.components[0] = Scalar::generator("x");
  auto pts = random_points(a, 4, 3);
  CHECK_THROWS(reduce(s, bad, pts));
  // vanishing field rejected
  VectorField zero{a, std::vector<Scalar>(8, Scalar(0))};
  CHECK_THROWS(reduce(s, zero, pts));
}

TEST_CASE("nil bundle over the six-torus through the quotient interface") {
  // base: T^6 x R^+ with s = r^3 written in the r coordinate
  CYData cy = flat_cy6();
  CalabiAnsatz ca = calabi_ansatz(cy.z6, cy.cy, "s");
  const QuotientData& q = ca.data;
  // the total chart obeys d^2 = 0 and the assembled metric legs close
  auto rep = q.total()->check_integrability(q.total()->sample_points());
  CHECK(rep.exact_zero);
  // curvature of the total metric: Ricci flat
  CurvatureForms F = riemann(levi_civita(q.total()));
  SymTensor ric = ricci_lc(F);
  const auto& pts = q.total()->sample_points();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (const auto& p : pts) CHECK(std::fabs(ric.at(i, j).eval(p.values)) < 1e-9);
  // holonomy span: 15 at every sampled point
  auto rank = holonomy_span_rank(F, pts);
  CHECK(rank.rank == 15);
  CHECK(rank.stable);
}
