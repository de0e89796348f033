#pragma once

#include "spinq/frame_algebra.hpp"

namespace spinq {

// Levi-Civita connection forms of the declared orthonormal coframe:
// skew matrix omega with d(theta^a) = -omega^a_b ^ theta^b.
struct ConnectionForms {
  AlgebraPtr alg;
  std::vector<std::vector<Form>> omega;  // n x n of 1-forms, omega[a][b] = -omega[b][a]

  // residual of the first structure equation, re-substituted
  Form structure_residual(int a) const;
};

ConnectionForms levi_civita(const AlgebraPtr& alg);

// curvature F = d(omega) + omega ^ omega
struct CurvatureForms {
  AlgebraPtr alg;
  std::vector<std::vector<Form>> F;  // n x n of 2-forms, skew

  Form first_bianchi_residual(int a) const;  // sum_b F^a_b ^ theta^b
};

CurvatureForms riemann(const ConnectionForms& c);

SymTensor ricci_lc(const CurvatureForms& F);
Scalar scal_lc(const CurvatureForms& F);
// sum of squared antisymmetric parts of the raw Ricci contraction; a nonzero
// value flags an inconsistent connection
Scalar ricci_asymmetry_norm_sq(const CurvatureForms& F);

// dimension of the span of the curvature endomorphisms F(e_a, e_b) in so(n)
// over the given points; flagged ambiguous when unstable across thresholds
struct HolonomyRank {
  int rank = 0;
  bool stable = true;  // across singular value thresholds 1e-6 .. 1e-10
};
HolonomyRank holonomy_span_rank(const CurvatureForms& F, const std::vector<Point>& pts);

// sum of squared coefficient norms of every curvature 2-form at a point
double curvature_norm_sq_at(const CurvatureForms& F, const Point& p);

// least squares slope of log(y) against log(x)
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace spinq
