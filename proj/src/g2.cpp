#include "spinq/g2.hpp"

#include <cmath>

#include "spinq/exact_linalg.hpp"

namespace spinq {

Form standard_phi0(const AlgebraPtr& alg, int shift) {
  auto t = [&](int i, int j, int k, int sign) {
    return Form::term(alg, {i + shift, j + shift, k + shift}, Scalar(sign));
  };
  return t(1, 2, 3, 1) + t(1, 4, 5, 1) + t(1, 6, 7, 1) + t(2, 4, 6, 1) + t(2, 5, 7, -1) +
         t(3, 4, 7, -1) + t(3, 5, 6, -1);
}

SymTensor metric_from_phi(const Form& phi) {
  const AlgebraPtr& alg = phi.algebra();
  int n = alg->dim();
  SymTensor b = SymTensor::zero(alg);
  Indices all(n);
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  for (int i = 0; i < n; ++i) {
    VectorField ei{alg, std::vector<Scalar>(n, Scalar(0))};
    ei.components[i] = Scalar(1);
    Form iphi = interior(ei, phi);
    for (int j = i; j < n; ++j) {
      VectorField ej{alg, std::vector<Scalar>(n, Scalar(0))};
      ej.components[j] = Scalar(1);
      Form top = wedge(wedge(iphi, interior(ej, phi)), phi);
      Scalar v = Rational(1, 6) * top.coefficient(all);
      b.at(i, j) = v;
      b.at(j, i) = v;
    }
  }
  return b;
}

static std::vector<Point> validation_points(const AlgebraPtr& alg) {
  if (!alg->sample_points().empty()) return alg->sample_points();
  if (alg->generators().empty()) return {Point{}};
  return random_points(alg, 5, 1);
}

G2Structure::G2Structure(AlgebraPtr alg, Form phi, double tol) : alg_(std::move(alg)) {
  if (alg_->dim() != 7) throw std::domain_error("g2: structure needs a 7-dimensional chart");
  if (phi.degree() != 3) throw std::domain_error("g2: defining form must have degree 3");
  SymTensor b = metric_from_phi(phi);
  SymTensor id = SymTensor::identity(alg_);
  bool exact_ok = true;
  for (int i = 0; i < 7 && exact_ok; ++i)
    for (int j = 0; j < 7 && exact_ok; ++j)
      if (!(b.at(i, j) - id.at(i, j)).is_zero()) exact_ok = false;
  if (!exact_ok) {
    auto pts = validation_points(alg_);
    for (const auto& p : pts)
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
          double want = (i == j) ? 1.0 : 0.0;
          double got = b.at(i, j).eval(p.values);
          if (std::fabs(got - want) > tol)
            throw std::domain_error(
                "g2: coframe not adapted to phi; induced metric fails at frame pair (" +
                std::to_string(i + 1) + "," + std::to_string(j + 1) + "), value " +
                std::to_string(got));
        }
  }
  phi_ = std::move(phi);
  star_phi_ = hodge(phi_);
}

TwoFormSplit project2_g2(const G2Structure& s, const Form& a) {
  if (a.degree() != 2) throw std::domain_error("project2_g2: need a 2-form");
  Form sap = hodge(wedge(a, s.phi()));
  Form p7 = Rational(1, 3) * (a + sap);
  Form p14 = Rational(1, 3) * (Rational(2) * a - sap);
  return {p7, p14};
}

ThreeFormSplit project3_g2(const G2Structure& s, const Form& c) {
  if (c.degree() != 3) throw std::domain_error("project3_g2: need a 3-form");
  const AlgebraPtr& alg = s.algebra();
  Form c1 = (Rational(1, 7) * metric_pair(c, s.phi())) * s.phi();
  // coefficient-level least squares against the span of *(e^i ^ phi)
  std::vector<Form> basis;
  basis.reserve(7);
  for (int i = 1; i <= 7; ++i) basis.push_back(hodge(wedge(alg->coframe(i), s.phi())));
  std::vector<std::vector<Scalar>> gram(7, std::vector<Scalar>(7, Scalar(0)));
  std::vector<Scalar> rhs(7, Scalar(0));
  for (int i = 0; i < 7; ++i) {
    rhs[i] = metric_pair(basis[i], c);
    for (int j = i; j < 7; ++j) {
      gram[i][j] = metric_pair(basis[i], basis[j]);
      gram[j][i] = gram[i][j];
    }
  }
  std::vector<Scalar> x = solve_linear(std::move(gram), std::move(rhs));
  Form c7 = Form::zero(alg, 3);
  for (int i = 0; i < 7; ++i) c7 += x[i] * basis[i];
  Form c27 = c - c1 - c7;
  return {c1, c7, c27};
}

G2Torsion g2_torsion_from(const G2Structure& s, const Form& dphi, const Form& dstar_phi) {
  G2Torsion t;
  t.dphi = dphi;
  t.dstar_phi = dstar_phi;
  t.tau0 = Rational(1, 7) * metric_pair(dphi, s.star_phi());
  t.tau1 = Scalar(Rational(-1, 12)) * hodge(wedge(hodge(dphi), s.phi()));
  t.tau3 = hodge(dphi - t.tau0 * s.star_phi() - Rational(3) * wedge(t.tau1, s.phi()));
  t.tau2 = -hodge(dstar_phi - Rational(4) * wedge(t.tau1, s.star_phi()));
  t.residual_dphi = dphi - (t.tau0 * s.star_phi() + Rational(3) * wedge(t.tau1, s.phi()) +
                            hodge(t.tau3));
  t.residual_dstar = dstar_phi - (Rational(4) * wedge(t.tau1, s.star_phi()) +
                                  wedge(t.tau2, s.phi()));
  t.residual_tau2_membership = wedge(t.tau2, s.star_phi());
  t.residual_tau3_membership = wedge(t.tau3, s.phi());
  return t;
}

G2Torsion g2_torsion(const G2Structure& s) {
  return g2_torsion_from(s, d(s.phi()), d(s.star_phi()));
}

bool G2Torsion::residuals_exactly_zero() const {
  return residual_dphi.is_zero() && residual_dstar.is_zero() &&
         residual_tau2_membership.is_zero() && residual_tau3_membership.is_zero();
}

double G2Torsion::max_residual(const std::vector<Point>& pts) const {
  double m = 0;
  auto probe = [&](const Form& f) {
    for (const auto& p : pts)
      m = std::max(m, max_coefficient_deviation(f, Form::zero(f.algebra(), f.degree()), p));
  };
  probe(residual_dphi);
  probe(residual_dstar);
  probe(residual_tau2_membership);
  probe(residual_tau3_membership);
  return m;
}

SU3Triple hypersurface_su3(const G2Structure& s, const VectorField& normal, double tol) {
  Scalar nn(0);
  for (const auto& c : normal.components) nn += c * c;
  if (!(nn - Scalar(1)).is_zero()) {
    auto pts = validation_points(s.algebra());
    for (const auto& p : pts)
      if (std::fabs(nn.eval(p.values) - 1.0) > tol)
        throw std::domain_error("hypersurface_su3: normal is not unit length");
  }
  Form eta = metric_dual(normal);
  SU3Triple t;
  t.omega = interior(normal, s.phi());
  t.omega_plus = s.phi() - wedge(eta, t.omega);
  t.omega_minus = -interior(normal, s.star_phi());
  return t;
}

}  // namespace spinq
