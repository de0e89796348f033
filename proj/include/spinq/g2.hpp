#pragma once

#include "spinq/frame_algebra.hpp"

namespace spinq {

// The model 3-form phi0 = e123 + e145 + e167 + e246 - e257 - e347 - e356,
// optionally with all indices shifted (shift=1 targets legs 2..8 of an
// 8-dimensional frame).
Form standard_phi0(const AlgebraPtr& alg, int shift = 0);

// B_ab with (1/6) i_a(phi) ^ i_b(phi) ^ phi = B_ab * e^{1..n}; equals the
// induced metric on adapted coframes.
SymTensor metric_from_phi(const Form& phi);

// A G2-structure over a coframe adapted to its metric (B = identity).
class G2Structure {
 public:
  // Validates that the coframe is adapted: exactly when possible, otherwise
  // numerically at the algebra's sample points.
  G2Structure(AlgebraPtr alg, Form phi, double tol = 1e-9);

  const AlgebraPtr& algebra() const { return alg_; }
  const Form& phi() const { return phi_; }
  const Form& star_phi() const { return star_phi_; }
  Form volume() const { return alg_->volume(); }

 private:
  AlgebraPtr alg_;
  Form phi_, star_phi_;
};

// eigenspace split of a 2-form under a ^ phi, star: +2 on the 7-part, -1 on
// the 14-part
struct TwoFormSplit {
  Form part7, part14;
};
TwoFormSplit project2_g2(const G2Structure& s, const Form& a);

struct ThreeFormSplit {
  Form part1, part7, part27;
};
ThreeFormSplit project3_g2(const G2Structure& s, const Form& c);

// torsion forms with d(phi) = tau0 * (*phi) + 3 tau1 ^ phi + *tau3 and
// d(*phi) = 4 tau1 ^ *phi + tau2 ^ phi; tau3 stored as the 3-form whose
// Hodge dual appears in d(phi)
struct G2Torsion {
  Scalar tau0;
  Form tau1, tau2, tau3;
  Form dphi, dstar_phi;          // the derivatives that were decomposed
  Form residual_dphi;            // reconstruction residuals, identically zero
  Form residual_dstar;           // when the decomposition is consistent
  Form residual_tau2_membership; // tau2 ^ *phi
  Form residual_tau3_membership; // tau3 ^ phi

  double max_residual(const std::vector<Point>& pts) const;
  bool residuals_exactly_zero() const;
};

G2Torsion g2_torsion(const G2Structure& s);
// same decomposition with externally supplied derivatives
G2Torsion g2_torsion_from(const G2Structure& s, const Form& dphi, const Form& dstar_phi);

// SU(3)-structure induced on the hypersurface orthogonal to a unit normal
struct SU3Triple {
  Form omega, omega_plus, omega_minus;
};
SU3Triple hypersurface_su3(const G2Structure& s, const VectorField& normal, double tol = 1e-9);

}  // namespace spinq
