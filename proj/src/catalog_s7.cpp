#include <random>

#include "spinq/catalog.hpp"
#include "spinq/curvature.hpp"

namespace spinq {

namespace {

// components of the model 4-form as rational coefficients over index tuples
std::map<Indices, Rational> model_phi4_coefficients() {
  std::shared_ptr<FrameAlgebra> a = FrameAlgebra::create(8, {});
  std::map<Indices, Rational> out;
  for (const auto& [idx, c] : standard_Phi0(a).coefficients()) out[idx] = c.rational_value();
  return out;
}

Scalar det4(const std::vector<std::vector<Scalar>>& cols) {
  // Laplace expansion along the first column of a 4x4 matrix stored as columns
  Scalar acc(0);
  for (int r = 0; r < 4; ++r) {
    Scalar minor_det(0);
    int rows[3], ri = 0;
    for (int k = 0; k < 4; ++k)
      if (k != r) rows[ri++] = k;
    // 3x3 determinant of columns 1..3 on rows[]
    minor_det = cols[1][rows[0]] * (cols[2][rows[1]] * cols[3][rows[2]] -
                                    cols[2][rows[2]] * cols[3][rows[1]]) -
                cols[1][rows[1]] * (cols[2][rows[0]] * cols[3][rows[2]] -
                                    cols[2][rows[2]] * cols[3][rows[0]]) +
                cols[1][rows[2]] * (cols[2][rows[0]] * cols[3][rows[1]] -
                                    cols[2][rows[1]] * cols[3][rows[0]]);
    Scalar term = cols[0][r] * minor_det;
    acc += (r % 2 == 0) ? term : -term;
  }
  return acc;
}

// pull a constant ambient 4-form back through symbolic legs: out_{i<j<k} =
// Phi(n, T_i, T_j, T_k)
Form restrict_model_form(const AlgebraPtr& chart, const std::map<Indices, Rational>& amb,
                         const std::vector<Scalar>& n,
                         const std::vector<std::vector<Scalar>>& legs) {
  Form out = Form::zero(chart, 3);
  for (const auto& idx : increasing_tuples(7, 3)) {
    Scalar acc(0);
    for (const auto& [aidx, c] : amb) {
      std::vector<std::vector<Scalar>> cols(4);
      cols[0] = {n[aidx[0] - 1], n[aidx[1] - 1], n[aidx[2] - 1], n[aidx[3] - 1]};
      for (int q = 0; q < 3; ++q) {
        const auto& t = legs[idx[q] - 1];
        cols[q + 1] = {t[aidx[0] - 1], t[aidx[1] - 1], t[aidx[2] - 1], t[aidx[3] - 1]};
      }
      acc += Scalar(c) * det4(cols);
    }
    if (!acc.is_zero()) out.set_coefficient(idx, acc);
  }
  return out;
}

std::vector<Point> unit_sphere_points(int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < count) {
    double v[8], n2 = 0;
    for (double& x : v) {
      x = unit();
      n2 += x * x;
    }
    if (n2 < 0.1) continue;
    double n = std::sqrt(n2);
    Point p;
    for (int i = 0; i < 8; ++i) p.values["x" + std::to_string(i)] = v[i] / n;
    pts.push_back(p);
  }
  return pts;
}

Eigen::VectorXd eval_field(const VectorField& X, const Point& p, int m) {
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) v(i) = X.components[i].eval(p.values);
  return v;
}

}  // namespace

// ---------------------------------------------------------- chart product

CatalogEntry build_s7_s1_product() {
  CatalogEntry e;
  e.id = "s7_s1_product";
  e.description =
      "product of the round 7-sphere (stereographic chart, nearly parallel structure) with a "
      "flat circle";
  // sphere chart: dE^i = sum_j y_j E^i ^ E^j, dy_i = (D/2) E^i
  auto b = FrameAlgebra::create(7, {});
  std::vector<Scalar> y;
  for (int i = 1; i <= 7; ++i) y.push_back(Scalar::generator("y" + std::to_string(i)));
  Scalar D(1);
  for (int i = 0; i < 7; ++i) D += y[i] * y[i];
  for (int i = 1; i <= 7; ++i) {
    Form de = Form::zero(b, 2);
    for (int j = 1; j <= 7; ++j)
      if (j != i) de += y[j - 1] * Form::term(b, {i, j}, Scalar(1));
    b->declare_structure(i, de);
  }
  for (int i = 1; i <= 7; ++i)
    b->declare_generator("y" + std::to_string(i), false, (Rational(1, 2) * D) * b->coframe(i));
  e.points = random_points(b, 6, 41, 0.05, 0.55);
  b->set_sample_points(e.points);

  // round structure: restrict the model 4-form through the chart legs
  // n = ((|y|^2-1)/D, 2y/D), T_i = (2 y_i / D, delta_ij - 2 y_i y_j / D)
  std::vector<Scalar> n(8, Scalar(0));
  n[0] = (D - Scalar(2)) / D;  // (|y|^2 - 1)/D
  for (int i = 0; i < 7; ++i) n[i + 1] = Rational(2) * y[i] / D;
  std::vector<std::vector<Scalar>> legs(7, std::vector<Scalar>(8, Scalar(0)));
  for (int i = 0; i < 7; ++i) {
    legs[i][0] = Rational(2) * y[i] / D;
    for (int j = 0; j < 7; ++j) {
      legs[i][j + 1] = (i == j ? Scalar(1) : Scalar(0)) - Rational(2) * (y[i] * y[j]) / D;
    }
  }
  Form phi = restrict_model_form(b, model_phi4_coefficients(), n, legs);
  G2Structure base(b, phi);
  auto q = std::make_shared<QuotientData>(base, Scalar(1), Form::zero(b, 2));
  e.algebra = q->total();
  e.quotient = q;
  e.g2 = std::make_shared<G2Structure>(base);
  e.spin7 = std::make_shared<Spin7Structure>(q->assemble());
  e.forms["phi"] = base.phi();
  e.forms["Phi"] = e.spin7->Phi();

  auto pts = e.points;
  auto g2s = e.g2;
  e.claims.push_back({"lcp-quotient", "nearly-parallel-base", [g2s, pts]() {
                        G2Torsion t = g2_torsion(*g2s);
                        Residual r;
                        r.name = "nearly-parallel-base";
                        r.identity = "d(phi) = 4 *phi; tau1 = tau2 = tau3 = 0";
                        Form dphi = t.dphi - Rational(4) * g2s->star_phi();
                        r.exact_zero = false;
                        double m = 0;
                        for (const auto& p : pts) {
                          m = std::max(m, max_coefficient_deviation(
                                              dphi, Form::zero(dphi.algebra(), 4), p));
                          m = std::max(m, std::fabs(t.tau0.eval(p.values) - 4.0));
                          for (const Form* f : {&t.tau1, &t.tau2, &t.tau3})
                            m = std::max(m, max_coefficient_deviation(
                                                *f, Form::zero(f->algebra(), f->degree()), p));
                        }
                        r.numeric = m;
                        return r;
                      }});
  auto spin = e.spin7;
  e.claims.push_back({"lcp-quotient", "product-t5-vanishes", [spin, q, pts]() {
                        Spin7Torsion t = spin7_torsion(*spin);
                        Residual r;
                        r.name = "product-t5-vanishes";
                        r.identity = "T5 = 0 and T1 is closed";
                        double m = 0;
                        for (const auto& p : pts) {
                          m = std::max(m, max_coefficient_deviation(
                                              t.T5, Form::zero(t.T5.algebra(), 5), p));
                          Form dt1 = d(t.T1);
                          m = std::max(m, max_coefficient_deviation(
                                              dt1, Form::zero(dt1.algebra(), 2), p));
                        }
                        r.exact_zero = false;
                        r.numeric = m;
                        return r;
                      }});
  e.claims.push_back({"lcp-quotient", "f-constant", [q, spin, pts]() {
                        Spin7Torsion t = spin7_torsion(*spin);
                        QuotientTorsion qt = split_quotient_torsion(*q, t);
                        Residual r;
                        r.name = "f-constant";
                        r.identity = "f = T1(X) is the constant -tau0";
                        double m = 0;
                        for (const auto& p : pts)
                          m = std::max(m, std::fabs(qt.f.eval(p.values) + 4.0));
                        Form df = d(q->base().algebra()->constant(qt.f));
                        for (const auto& p : pts)
                          m = std::max(m,
                                       max_coefficient_deviation(df, Form::zero(df.algebra(), 1), p));
                        r.exact_zero = false;
                        r.numeric = m;
                        return r;
                      }});
  e.claims.push_back({"ricci-oracle", "scal-both-routes", [spin, q, pts]() {
                        Spin7Torsion t = spin7_torsion(*spin);
                        Scalar from_torsion = scal_from_torsion(*spin, t);
                        Scalar from_cartan = scal_lc(riemann(levi_civita(q->total())));
                        return make_residual("scal-both-routes",
                                             "Scal from torsion equals Scal from the connection",
                                             from_torsion - from_cartan, pts);
                      }});
  e.claims.push_back({"ricci-oracle", "ricci-both-routes", [spin, q, pts]() {
                        Spin7Torsion t = spin7_torsion(*spin);
                        SymTensor a = ricci_from_torsion(*spin, t);
                        SymTensor b2 = ricci_lc(riemann(levi_civita(q->total())));
                        Residual r;
                        r.name = "ricci-both-routes";
                        r.identity = "Ric from torsion equals Ric from the connection";
                        double m = 0;
                        for (int i = 0; i < 8; ++i)
                          for (int j = 0; j < 8; ++j) {
                            Scalar diff = a.at(i, j) - b2.at(i, j);
                            if (diff.is_zero()) continue;
                            for (const auto& p : pts)
                              m = std::max(m, std::fabs(diff.eval(p.values)));
                          }
                        r.exact_zero = m == 0;
                        r.numeric = m;
                        return r;
                      }});
  return e;
}

// ------------------------------------------------------------- ambient S7

CatalogEntry build_round_s7_ambient() {
  CatalogEntry e;
  e.id = "round_s7_ambient";
  e.description =
      "round 7-sphere inside flat R^8 times a circle; structures restricted to "
      "sample-point tangent frames";
  std::vector<std::string> names;
  for (int i = 0; i < 8; ++i) names.push_back("dx" + std::to_string(i));
  names.push_back("dth");
  auto a = FrameAlgebra::create(9, names);
  for (int i = 0; i < 8; ++i)
    a->declare_generator("x" + std::to_string(i), false, a->coframe(i + 1));
  e.algebra = a;
  e.points = unit_sphere_points(12, 99);
  a->set_sample_points(e.points);
  e.exact_capable = false;

  // the model form on the R^8 factor
  Form Phi0 = Form::zero(a, 4);
  for (const auto& [idx, c] : model_phi4_coefficients()) Phi0 += Form::term(a, idx, Scalar(c));
  // Euler field and ambient representatives of the sphere structure
  VectorField euler{a, std::vector<Scalar>(9, Scalar(0))};
  for (int i = 0; i < 8; ++i) euler.components[i] = Scalar::generator("x" + std::to_string(i));
  Form phi_rep = interior(euler, Phi0);
  // product structure on the sphere times circle
  Form Phi_product = wedge(a->coframe(9), phi_rep) + Phi0;
  e.forms["Phi0"] = Phi0;
  e.forms["phi_s7"] = phi_rep;
  e.forms["Phi_product"] = Phi_product;
  e.fields["euler"] = euler;

  // diagonal circle action
  VectorField hopf{a, std::vector<Scalar>(9, Scalar(0))};
  auto x = [](int i) { return Scalar::generator("x" + std::to_string(i)); };
  hopf.components[0] = -x(1);
  hopf.components[1] = x(0);
  hopf.components[2] = -x(3);
  hopf.components[3] = x(2);
  hopf.components[4] = -x(5);
  hopf.components[5] = x(4);
  hopf.components[6] = -x(7);
  hopf.components[7] = x(6);
  e.fields["hopf"] = hopf;

  auto pts = e.points;
  auto tangent = [a](const Point& p) {
    Eigen::MatrixXd kernel(1, 9);
    kernel.setZero();
    for (int i = 0; i < 8; ++i) kernel(0, i) = p.values.at("x" + std::to_string(i));
    Eigen::MatrixXd seed(1, 9);
    seed.setZero();
    seed(0, 8) = 1.0;  // circle leg first in the seed, rotated later
    return orthonormal_frame(seed, kernel, 8);
  };

  // quotient of the product by the circle factor (locally conformally parallel)
  VectorField dtheta{a, std::vector<Scalar>(9, Scalar(0))};
  dtheta.components[8] = Scalar(1);
  auto pw_theta = std::make_shared<PointwiseQuotient>(
      make_pointwise_quotient(a, Phi_product, dtheta, tangent, pts));
  e.pointwise = pw_theta;

  // quotient of the product by the diagonal action: base CP^3 x S^1
  auto pw_hopf = std::make_shared<PointwiseQuotient>(
      make_pointwise_quotient(a, Phi_product, hopf, tangent, pts));

  Form omega_rep = interior(hopf, phi_rep);
  Form eta_rep = pw_hopf->eta_rep;
  Form deta_rep = pw_hopf->deta_rep;
  e.forms["omega_cp3"] = omega_rep;
  e.forms["eta_hopf"] = eta_rep;

  e.claims.push_back({"lcp-quotient", "sphere-invariance", [a, Phi0, hopf, euler, pts]() {
                        Residual r;
                        r.name = "sphere-invariance";
                        r.identity = "L_X Phi0 = 0 for the diagonal action, [X, E] = 0";
                        Form lie = lie_derivative(hopf, Phi0);
                        r.exact_zero = lie.is_zero();
                        VectorField br = lie_bracket(hopf, euler);
                        for (const auto& c : br.components) r.exact_zero = r.exact_zero && c.is_zero();
                        return r;
                      }});
  e.claims.push_back(
      {"lcp-quotient", "cp3-torsion-displays", [pw_hopf, omega_rep, deta_rep, a, pts]() {
         // tau0 = tau3 = 0, tau1 = -(4/3) dtheta, tau2 = -(2/3 omega + deta),
         // all at sample-point frames of the quotient
         Residual r;
         r.name = "cp3-torsion-displays";
         r.identity = "tau0 = tau3 = 0; tau1 = -4/3 dtheta; tau2 = -(2/3 omega + deta); d tau1 = 0";
         double worst = 0;
         for (const auto& p : pw_hopf->points) {
           Eigen::MatrixXd tangent = pw_hopf->tangent_frame(p);
           Eigen::VectorXd xv = eval_field(pw_hopf->X, p, 9);
           Eigen::VectorXd xt = tangent * xv;
           Eigen::MatrixXd rot =
               orthonormal_frame(xt.transpose(), Eigen::MatrixXd(0, 8), 8);
           Eigen::MatrixXd total = rot * tangent;
           NumForm Phi = restrict_to_frame(pw_hopf->Phi_rep, p, total);
           if (num_wedge(Phi, Phi).c[0] < 0) {
             total.row(7) = -total.row(7);
             Phi = restrict_to_frame(pw_hopf->Phi_rep, p, total);
           }
           Eigen::MatrixXd base = total.bottomRows(7);  // s = 1, no rescale
           NumForm phi_b = restrict_to_frame(pw_hopf->phi_rep, p, base);
           NumG2 g2{phi_b, num_hodge(phi_b)};
           NumForm dphi_b = restrict_to_frame(pw_hopf->dphi_rep, p, base);
           NumForm dstar_b = restrict_to_frame(pw_hopf->dstarphi_rep, p, base);
           auto tau = num_g2_torsion(g2, dphi_b, dstar_b);
           worst = std::max(worst, tau.max_residual);
           worst = std::max(worst, std::fabs(tau.tau0));
           worst = std::max(worst, tau.tau3.max_abs());
           // circle leg of the quotient: restriction of dtheta
           Form dth = Form::term(a, {9}, Scalar(1));
           NumForm dth_b = restrict_to_frame(dth, p, base);
           worst = std::max(worst, (tau.tau1 - dth_b * (-4.0 / 3.0)).max_abs());
           NumForm om_b = restrict_to_frame(omega_rep, p, base);
           NumForm deta_b = restrict_to_frame(deta_rep, p, base);
           worst = std::max(worst, (tau.tau2 + (om_b * (2.0 / 3.0) + deta_b)).max_abs());
         }
         r.exact_zero = false;
         r.numeric = worst;
         return r;
       }});
  e.claims.push_back({"hodge-transfer", "pointwise-transfer", [pw_theta]() {
                        Residual worst;
                        worst.name = "pointwise-transfer";
                        worst.identity = "seven star transfer rules at sample frames";
                        worst.exact_zero = false;
                        for (const auto& r : hodge_transfer_check(*pw_theta))
                          worst.numeric = std::max(worst.numeric, r.numeric);
                        return worst;
                      }});
  e.claims.push_back({"torsion-relations", "pointwise-relations", [pw_theta]() {
                        Residual worst;
                        worst.name = "pointwise-relations";
                        worst.identity = "torsion relations at sample frames";
                        worst.exact_zero = false;
                        for (const auto& r : torsion_relations(*pw_theta))
                          worst.numeric = std::max(worst.numeric, r.numeric);
                        return worst;
                      }});
  return e;
}

}  // namespace spinq
