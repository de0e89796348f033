#include <random>

#include "spinq/catalog.hpp"
#include "spinq/curvature.hpp"

namespace spinq {

namespace {

Scalar gen(const char* n) { return Scalar::generator(n); }

void add_quotient_claims(CatalogEntry& e, const char* suite_prefix) {
  // shared claim set for entries carrying symbolic quotient data
  auto q = e.quotient;
  auto pts = e.points;
  (void)suite_prefix;
  e.claims.push_back({"hodge-transfer", "transfer-rules", [q, pts]() {
                        Residual worst;
                        worst.name = "transfer-rules";
                        worst.identity = "seven star transfer rules";
                        worst.exact_zero = true;
                        for (const auto& r : hodge_transfer_check(*q, pts)) {
                          worst.exact_zero = worst.exact_zero && r.exact_zero;
                          worst.numeric = std::max(worst.numeric, r.numeric);
                        }
                        return worst;
                      }});
}

}  // namespace

CatalogEntry build_flat_t7() {
  CatalogEntry e;
  e.id = "flat_T7";
  e.description = "flat 7-torus chart with the model 3-form";
  auto a = FrameAlgebra::create(7, {});
  e.algebra = a;
  e.exact_capable = true;
  e.points = {Point{}};
  Form phi = standard_phi0(a);
  e.g2 = std::make_shared<G2Structure>(a, phi);
  e.forms["phi"] = phi;
  e.forms["star_phi"] = e.g2->star_phi();
  auto g2s = e.g2;
  e.claims.push_back({"torsion-relations", "flat-torsion-vanishes", [g2s]() {
                        G2Torsion t = g2_torsion(*g2s);
                        Residual r;
                        r.name = "flat-torsion-vanishes";
                        r.identity = "d(phi) = 0 and d(*phi) = 0";
                        r.exact_zero = t.tau0.is_zero() && t.tau1.is_zero() && t.tau2.is_zero() &&
                                       t.tau3.is_zero();
                        return r;
                      }});
  return e;
}

CatalogEntry build_flat_t8() {
  CatalogEntry e;
  e.id = "flat_T8";
  e.description = "flat 8-torus as the trivial product over the flat 7-torus";
  auto base_alg = FrameAlgebra::create(7, {});
  G2Structure base(base_alg, standard_phi0(base_alg));
  auto q = std::make_shared<QuotientData>(base, Scalar(1), Form::zero(base_alg, 2));
  e.algebra = q->total();
  e.exact_capable = true;
  e.points = {Point{}};
  e.quotient = q;
  e.spin7 = std::make_shared<Spin7Structure>(q->assemble());
  e.forms["Phi"] = e.spin7->Phi();
  add_quotient_claims(e, "flat");
  auto s7 = e.spin7;
  e.claims.push_back({"ricci-oracle", "flat-ricci-zero", [s7]() {
                        Spin7Torsion t = spin7_torsion(*s7);
                        SymTensor ric = ricci_from_torsion(*s7, t);
                        Scalar sum(0);
                        for (int i = 0; i < 8; ++i)
                          for (int j = 0; j < 8; ++j) sum += ric.at(i, j) * ric.at(i, j);
                        Residual r;
                        r.name = "flat-ricci-zero";
                        r.identity = "Ric = 0";
                        r.exact_zero = sum.is_zero();
                        return r;
                      }});
  return e;
}

CatalogEntry build_flat_r8() {
  CatalogEntry e;
  e.id = "flat_R8";
  e.description = "flat coordinate chart on R^8 with the model 4-form";
  std::vector<std::string> names;
  for (int i = 0; i < 8; ++i) names.push_back("dx" + std::to_string(i));
  auto a = FrameAlgebra::create(8, names);
  for (int i = 0; i < 8; ++i)
    a->declare_generator("x" + std::to_string(i), false, a->coframe(i + 1));
  e.algebra = a;
  e.exact_capable = true;
  e.points = random_points(a, 10, 2025, 0.2, 1.3);
  a->set_sample_points(e.points);
  e.spin7 = std::make_shared<Spin7Structure>(a, standard_Phi0(a));
  e.forms["Phi"] = e.spin7->Phi();
  return e;
}

CatalogEntry build_nil_cy() {
  CatalogEntry e;
  e.id = "nil_cy";
  e.description =
      "nil 7-manifold circle bundle over the flat 6-torus with scale s = r^3; "
      "the total space is a Calabi-Yau 4-fold chart";
  // base: T^6 x R^+ with legs {e1..e6, 2 r^3 dr}
  auto b = FrameAlgebra::create(7, {"e1", "e2", "e3", "e4", "e5", "e6", "u7"});
  Scalar r = gen("r");
  b->declare_generator("r", true, (Rational(1, 2) * r.pow(Rational(-3))) * b->coframe(7));
  std::mt19937_64 rng(7);
  std::vector<Point> pts;
  for (int k = 0; k < 10; ++k) {
    Point p;
    p.values["r"] = 0.6 + 0.9 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    pts.push_back(p);
  }
  b->set_sample_points(pts);
  e.points = pts;
  e.exact_capable = true;

  Form omega = Form::term(b, {1, 2}, Scalar(1)) + Form::term(b, {3, 4}, Scalar(1)) +
               Form::term(b, {5, 6}, Scalar(1));
  Form omega_plus = Form::term(b, {1, 3, 5}, Scalar(1)) - Form::term(b, {1, 4, 6}, Scalar(1)) -
                    Form::term(b, {2, 3, 6}, Scalar(1)) - Form::term(b, {2, 4, 5}, Scalar(1));
  Form omega_minus = Form::term(b, {1, 3, 6}, Scalar(1)) + Form::term(b, {1, 4, 5}, Scalar(1)) +
                     Form::term(b, {2, 3, 5}, Scalar(1)) - Form::term(b, {2, 4, 6}, Scalar(1));
  Form phi = wedge(b->coframe(7), omega) + omega_plus;
  G2Structure base(b, phi);
  Scalar s = r * r * r;
  auto q = std::make_shared<QuotientData>(base, s, -omega);
  e.algebra = q->total();
  e.quotient = q;
  e.g2 = std::make_shared<G2Structure>(base);
  e.spin7 = std::make_shared<Spin7Structure>(q->assemble());
  e.forms["omega"] = omega;
  e.forms["omega_plus"] = omega_plus;
  e.forms["omega_minus"] = omega_minus;
  e.forms["phi"] = phi;
  e.forms["Phi"] = e.spin7->Phi();
  e.scalars["s"] = s;

  auto spin = e.spin7;
  auto quo = q;
  e.claims.push_back({"calabi", "total-form-closed", [spin]() {
                        Residual r;
                        r.name = "total-form-closed";
                        r.identity = "d(Phi) = 0";
                        r.exact_zero = d(spin->Phi()).is_zero();
                        return r;
                      }});
  e.claims.push_back({"calabi", "connection-is-minus-omega", [quo, omega]() {
                        Residual r;
                        r.name = "connection-is-minus-omega";
                        r.identity = "d(eta) = -omega";
                        r.exact_zero = equals_exact(quo->deta(), -omega);
                        return r;
                      }});
  e.claims.push_back({"torsion-free-quotient", "classification", [spin]() {
                        Residual r;
                        r.name = "classification";
                        r.identity = "torsion free";
                        r.exact_zero = classify(*spin) == Spin7Class::TorsionFree;
                        return r;
                      }});
  add_quotient_claims(e, "nil");
  return e;
}

CatalogEntry build_balanced(int variant) {
  CatalogEntry e;
  e.id = variant == 0   ? "balanced_b5t2_a"
         : variant == 1 ? "balanced_b5t2_b"
                        : "balanced_second_iteration";
  e.exact_capable = true;
  e.points = {Point{}};

  if (variant < 2) {
    e.description = "balanced lift over the nil 5-manifold times flat 2-torus";
    // leg order (e0,e1,e2,e3,e4,e7,e6) keeps the adapted orientation positive
    auto a = FrameAlgebra::create(7, {"e0", "e1", "e2", "e3", "e4", "e7", "e6"});
    a->declare_structure(5, Form::term(a, {1, 3}, Scalar(1)) + Form::term(a, {4, 2}, Scalar(1)));
    auto lbl = [](int i) {
      const int map[] = {1, 2, 3, 4, 5, -1, 7, 6};
      return map[i];
    };
    auto t3 = [&](int i, int j, int k, int sg) {
      return Form::term(a, {lbl(i), lbl(j), lbl(k)}, Scalar(sg));
    };
    auto t2 = [&](int i, int j, const Rational& c) {
      return Form::term(a, {lbl(i), lbl(j)}, Scalar(c));
    };
    Form phi = t3(1, 3, 7, 1) + t3(1, 0, 4, 1) + t3(1, 6, 2, 1) + t3(3, 0, 6, 1) +
               t3(3, 2, 4, 1) + t3(7, 0, 2, -1) + t3(7, 4, 6, -1);
    G2Structure base(a, phi);
    Form lambda =
        variant == 0
            ? t2(0, 3, Rational(1, 3)) + t2(1, 2, Rational(1, 3)) + t2(4, 7, Rational(2, 3))
            : t2(1, 2, Rational(4, 3)) + t2(0, 3, Rational(-2, 3)) + t2(4, 7, Rational(2, 3));
    auto q = std::make_shared<QuotientData>(balanced_lift(base, lambda));
    Form expected_deta = variant == 0 ? t2(0, 3, Rational(1)) + t2(1, 2, Rational(1))
                                      : t2(1, 2, Rational(2));
    e.algebra = q->total();
    e.quotient = q;
    e.g2 = std::make_shared<G2Structure>(base);
    e.spin7 = std::make_shared<Spin7Structure>(q->assemble());
    e.forms["phi"] = phi;
    e.forms["lambda"] = lambda;
    e.forms["expected_deta"] = expected_deta;
  } else {
    e.description = "balanced lift over the quotient by the nil direction of the previous total "
                    "space; the base carries de5 = 2 e12";
    // labels (0,1,2,3,5,6,7) on legs (1..7), order (e0,e1,e2,e3,e5,e7,e6)
    auto a = FrameAlgebra::create(7, {"e0", "e1", "e2", "e3", "e5", "e7", "e6"});
    auto lbl = [](int i) {
      const int map[] = {1, 2, 3, 4, -1, 5, 7, 6};
      return map[i];
    };
    a->declare_structure(5, Rational(2) * Form::term(a, {lbl(1), lbl(2)}, Scalar(1)));
    auto t3 = [&](int i, int j, int k, int sg) {
      return Form::term(a, {lbl(i), lbl(j), lbl(k)}, Scalar(sg));
    };
    auto t2 = [&](int i, int j, const Rational& c) {
      return Form::term(a, {lbl(i), lbl(j)}, Scalar(c));
    };
    // phi~ = e501 + e523 + e567 + e026 + e073 - e127 - e136
    Form phi = t3(5, 0, 1, 1) + t3(5, 2, 3, 1) + t3(5, 6, 7, 1) + t3(0, 2, 6, 1) +
               t3(0, 7, 3, 1) + t3(1, 2, 7, -1) + t3(1, 3, 6, -1);
    G2Structure base(a, phi);
    // d(xi) = e02 + e31 + e51 + 2 e26 + e37; lambda = (dxi)_14
    Form dxi = t2(0, 2, Rational(1)) + t2(3, 1, Rational(1)) + t2(5, 1, Rational(1)) +
               t2(2, 6, Rational(2)) + t2(3, 7, Rational(1));
    G2Torsion tau = g2_torsion(base);
    Form lambda = dxi + Rational(4) * hodge(wedge(tau.tau1, base.star_phi()));
    auto q = std::make_shared<QuotientData>(balanced_lift(base, lambda));
    e.algebra = q->total();
    e.quotient = q;
    e.g2 = std::make_shared<G2Structure>(base);
    e.spin7 = std::make_shared<Spin7Structure>(q->assemble());
    e.forms["phi"] = phi;
    e.forms["lambda"] = lambda;
    e.forms["expected_deta"] = dxi;
  }

  auto q = e.quotient;
  auto spin = e.spin7;
  Form expected = e.forms["expected_deta"];
  e.claims.push_back({"balanced-quotient", "curvature-as-stated", [q, expected]() {
                        Residual r;
                        r.name = "curvature-as-stated";
                        r.identity = "d(eta) matches the stated 2-form";
                        r.exact_zero = equals_exact(q->deta(), expected);
                        return r;
                      }});
  e.claims.push_back({"balanced-quotient", "t1-vanishes", [spin]() {
                        Spin7Torsion t = spin7_torsion(*spin);
                        Residual r;
                        r.name = "t1-vanishes";
                        r.identity = "T1 = 0";
                        r.exact_zero = t.T1.is_zero();
                        return r;
                      }});
  e.claims.push_back({"balanced-quotient", "curvature-7-part", [q]() {
                        return balanced_curvature_equation(*q, q->base().algebra()->sample_points());
                      }});
  add_quotient_claims(e, "balanced");
  return e;
}

}  // namespace spinq
