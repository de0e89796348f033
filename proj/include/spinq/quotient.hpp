#pragma once

#include "spinq/g2.hpp"
#include "spinq/pointwise.hpp"
#include "spinq/spin7.hpp"

namespace spinq {

// Circle-bundle data over a 7-dimensional base structure: the positive fibre
// scale s and the curvature 2-form of the connection. The derived total chart
// is 8-dimensional with first leg s^{-1} eta, orthonormal for the total
// metric s^{-2} eta^2 + s^{2/3} g_phi.
class QuotientData {
 public:
  QuotientData(G2Structure base, Scalar s, Form deta_base, double tol = 1e-9);

  const G2Structure& base() const { return base_; }
  const Scalar& s() const { return s_; }
  const Form& deta() const { return deta_; }
  const AlgebraPtr& total() const { return total_; }

  Form lift(const Form& base_form) const;   // pullback to the total chart
  Form lower(const Form& basic_total_form) const;
  Form eta() const;                          // connection form on the total chart
  VectorField fibre_field() const;           // generator of the circle action

  Spin7Structure assemble() const;           // eta ^ phi + s^{4/3} *phi

 private:
  G2Structure base_;
  Scalar s_;
  Form deta_;
  AlgebraPtr total_;
};

// decomposition of the 8-dimensional torsion along the fibre direction
struct QuotientTorsion {
  Scalar f;
  Form T17;        // 1-form on the base
  Form T57, T514;  // 5-forms on the base
  Form T47, T427;  // 4-forms on the base
  Form no_41_residual;  // the 4-form part never has a 1-component
};
QuotientTorsion split_quotient_torsion(const QuotientData& q, const Spin7Torsion& t);

// a named residual, evaluated exactly when the expression allows it
struct Residual {
  std::string name;
  std::string identity;  // human-readable statement of the relation
  bool exact_zero = false;
  double numeric = 0.0;

  bool pass(double tol) const { return exact_zero || numeric <= tol; }
};

Residual make_residual(std::string name, std::string identity, const Form& diff,
                       const std::vector<Point>& pts);
Residual make_residual(std::string name, std::string identity, const Scalar& diff,
                       const std::vector<Point>& pts);

// the seven Hodge-transfer rules between the total and base stars
std::vector<Residual> hodge_transfer_check(const QuotientData& q, const std::vector<Point>& pts);

// torsion relations between the total-space torsion and (tau, s, deta),
// including the two mixed consequences and the component-determination rule
std::vector<Residual> torsion_relations(const QuotientData& q, const std::vector<Point>& pts);

// torsion-free case: curvature determined by s; balanced case: 7-part of the
// curvature determined by tau1
std::vector<Residual> torsion_free_curvature_equations(const QuotientData& q,
                                                       const std::vector<Point>& pts);
Residual balanced_curvature_equation(const QuotientData& q, const std::vector<Point>& pts);

// scalar torsion budget of the total space from base data
std::vector<Residual> torsion_budget(const QuotientData& q, const std::vector<Point>& pts);

// Riemannian submersion (s = 1) scalar curvature comparison, both sides from
// independent machinery
Residual submersion_scalar_check(const QuotientData& q, const std::vector<Point>& pts);

// ------------------------------------------------------------------ reduce

struct ReducedData {
  Scalar s;
  Form eta;          // on the ambient/total chart
  Form phi;          // iota_X Phi
  Form starphi_rep;  // s^{-4/3} (Phi - eta ^ phi), restricts to *phi
  bool lie_exact_zero = false;
  double lie_residual = 0.0;
};
ReducedData reduce(const Spin7Structure& s8, const VectorField& X, const std::vector<Point>& pts,
                   double tol = 1e-9);

// ------------------------------------------------------- pointwise variant

// Ambient description of an invariant structure for sample-point checks:
// every field is a symbolic form on one ambient chart; restriction to the
// point frames happens numerically.
struct PointwiseQuotient {
  AlgebraPtr ambient;
  Form Phi_rep, dPhi_rep;
  VectorField X;
  Scalar s;
  Form eta_rep, deta_rep, ds_rep;
  Form phi_rep, dphi_rep, starphi_rep, dstarphi_rep;
  // orthonormal tangent legs (rows, ambient coords) of the total space at p
  std::function<Eigen::MatrixXd(const Point&)> tangent_frame;
  std::vector<Point> points;
};

// builds the derived fields (eta, ds, phi, *phi reps and their derivatives)
// from (Phi_rep, X); Phi_rep must be invariant
PointwiseQuotient make_pointwise_quotient(AlgebraPtr ambient, Form Phi_rep, VectorField X,
                                          std::function<Eigen::MatrixXd(const Point&)> frame,
                                          std::vector<Point> pts);

std::vector<Residual> hodge_transfer_check(const PointwiseQuotient& q);
std::vector<Residual> torsion_relations(const PointwiseQuotient& q);

// ------------------------------------------------------- ansatz builders

struct CalabiAnsatz {
  AlgebraPtr base7;       // Z^6 x R^+ chart, last leg (2/3) s^{1/3} ds
  QuotientData data;      // with deta = -omega
  Form omega_hat;         // on the total chart
  Form re_omega_hat;      // real part of the holomorphic volume form
};
// cy: SU(3) forms on a 6-dimensional chart; s_name: fresh positive generator
CalabiAnsatz calabi_ansatz(const AlgebraPtr& z6, const SU3Triple& cy, const std::string& s_name,
                           double tol = 1e-9);

// balanced lift: given tau0 = 0 and lambda in the 14-part with the stated
// closedness, the total structure eta ^ phi + *phi is balanced
QuotientData balanced_lift(const G2Structure& base, const Form& lambda, double tol = 1e-9);

struct GibbonsHawking {
  Form omega[3];
  Form vol;                 // (1/2) omega_i ^ omega_i, any i
  Residual monopole;        // *df - deta over the 3-dimensional base legs
  std::vector<Residual> closedness;
  std::vector<Residual> quaternion_relations;  // (1/2) w_i ^ w_j = delta_ij vol
};
// chart legs: {eta, b1, b2, b3}; f positive and basic
GibbonsHawking gibbons_hawking(const AlgebraPtr& alg4, const Scalar& f,
                               const std::vector<Point>& pts);

}  // namespace spinq
