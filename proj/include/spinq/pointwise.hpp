#pragma once

#include <Eigen/Dense>

#include "spinq/frame_algebra.hpp"

namespace spinq {

// Dense numeric exterior form over an (unnamed) orthonormal frame.
struct NumForm {
  int n = 0;
  int degree = 0;
  std::vector<double> c;  // combinadic-ranked coefficients

  static NumForm zero(int n, int degree);
  double& at(const Indices& idx);
  double get(const Indices& idx) const;  // idx may be unsorted, signed lookup

  NumForm operator+(const NumForm& o) const;
  NumForm operator-(const NumForm& o) const;
  NumForm operator*(double s) const;
  NumForm operator-() const;
  double max_abs() const;
};

NumForm num_wedge(const NumForm& a, const NumForm& b);
NumForm num_hodge(const NumForm& a);
NumForm num_interior(const Eigen::VectorXd& x, const NumForm& a);
double num_pair(const NumForm& a, const NumForm& b);

// restriction of an ambient form to the span of orthonormal legs (rows of
// `legs`, each a vector in the ambient dimension)
NumForm restrict_to_frame(const Form& ambient, const Point& p, const Eigen::MatrixXd& legs);

// orthonormal completion: rows of `seed` are orthonormalized in order, then
// completed to a full orthonormal basis of the orthogonal complement of
// `kernel` rows (pass empty kernel for the whole space); deterministic
Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& seed, const Eigen::MatrixXd& kernel,
                                  int target_rows);

// pointwise G2 package over a 7-frame
struct NumG2 {
  NumForm phi, star_phi;  // star_phi = num_hodge(phi) for adapted frames
};
NumForm num_project2_g2_7part(const NumG2& s, const NumForm& a);
struct NumThreeSplit {
  NumForm part1, part7, part27;
};
NumThreeSplit num_project3_g2(const NumG2& s, const NumForm& c);
struct NumG2Torsion {
  double tau0;
  NumForm tau1, tau2, tau3;
  double max_residual;  // reconstruction + membership residuals
};
NumG2Torsion num_g2_torsion(const NumG2& s, const NumForm& dphi, const NumForm& dstar_phi);

// pointwise Spin(7) package over an 8-frame
struct NumSpin7 {
  NumForm Phi;
};
struct NumSpin7Torsion {
  NumForm T1, T5;
  double membership_residual;
};
NumSpin7Torsion num_spin7_torsion(const NumSpin7& s, const NumForm& dPhi);
NumForm num_project2_spin7_7part(const NumSpin7& s, const NumForm& a);

// numeric symmetric-tensor insertion i and extraction j
Eigen::MatrixXd num_extract_j(const NumSpin7& s, const NumForm& K);
NumForm num_insert_i(const NumSpin7& s, const Eigen::MatrixXd& h);

// Hitchin construction in dimension 6: almost complex structure from a
// stable 3-form (normalized so J^2 = -1), and the metric g = omega(. , J .)
Eigen::MatrixXd hitchin_J(const NumForm& omega_plus);
Eigen::MatrixXd su3_metric(const NumForm& omega, const Eigen::MatrixXd& J);

}  // namespace spinq
