#pragma once

#include "spinq/frame_algebra.hpp"

namespace spinq {

// The model 4-form Phi0 = e^1 ^ phi0 + *phi0 on an 8-dimensional frame whose
// first leg plays the role of the distinguished direction.
Form standard_Phi0(const AlgebraPtr& alg);

class Spin7Structure {
 public:
  // Validates (1/14) Phi ^ Phi = vol and *Phi = Phi, exactly when possible,
  // otherwise at sample points.
  Spin7Structure(AlgebraPtr alg, Form Phi, double tol = 1e-9);

  const AlgebraPtr& algebra() const { return alg_; }
  const Form& Phi() const { return Phi_; }
  Form volume() const { return alg_->volume(); }

 private:
  AlgebraPtr alg_;
  Form Phi_;
};

// eigenspace split of a 2-form under a ^ Phi, star: +3 on the 7-part, -1 on
// the 21-part
struct TwoFormSplitSpin7 {
  Form part7, part21;
};
TwoFormSplitSpin7 project2_spin7(const Spin7Structure& s, const Form& a);

// symmetric tensors into 4-forms and back: i is injective with image the
// 1+35 part, j inverts it and kills the 7+27 part
Form insert_i(const Spin7Structure& s, const SymTensor& h);
SymTensor extract_j(const Spin7Structure& s, const Form& K);

struct Spin7Torsion {
  Form T1;      // 1-form component, d(Phi) = T1 ^ Phi + T5
  Form T5;      // 5-form component with *T5 ^ Phi = 0
  Form dPhi;
  Form residual_membership;  // *T5 ^ Phi

  bool residuals_exactly_zero() const { return residual_membership.is_zero(); }
  double max_residual(const std::vector<Point>& pts) const;
};

Spin7Torsion spin7_torsion(const Spin7Structure& s);
Spin7Torsion spin7_torsion_from(const Spin7Structure& s, const Form& dPhi);

enum class Spin7Class { TorsionFree, Balanced, LocallyConformallyParallel, Generic };
const char* to_string(Spin7Class c);
Spin7Class classify(const Spin7Structure& s, double tol = 1e-9);
Spin7Class classify_from(const Spin7Torsion& t, const std::vector<Point>& pts, double tol);

// curvature from torsion
Scalar scal_from_torsion(const Spin7Structure& s, const Spin7Torsion& t);
SymTensor ricci_from_torsion(const Spin7Structure& s, const Spin7Torsion& t);

}  // namespace spinq
