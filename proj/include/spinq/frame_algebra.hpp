#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spinq/combinatorics.hpp"
#include "spinq/scalar.hpp"

namespace spinq {

class FrameAlgebra;
using AlgebraPtr = std::shared_ptr<const FrameAlgebra>;

// Assignment of numeric values to every generator of an algebra.
struct Point {
  Assignment values;
};

// Graded sparse exterior form with symbolic coefficients over a frame algebra.
class Form {
 public:
  Form() = default;
  Form(AlgebraPtr alg, int degree) : alg_(std::move(alg)), degree_(degree) {}

  static Form zero(AlgebraPtr alg, int degree) { return Form(std::move(alg), degree); }
  // single term c * e^{i1} ^ ... ^ e^{ik}; indices need not be sorted
  static Form term(AlgebraPtr alg, Indices idx, Scalar c);

  int degree() const { return degree_; }
  const AlgebraPtr& algebra() const { return alg_; }
  bool is_zero() const { return coeffs_.empty(); }

  const std::map<Indices, Scalar>& coefficients() const { return coeffs_; }
  Scalar coefficient(const Indices& idx) const;  // idx may be unsorted
  void set_coefficient(const Indices& idx, Scalar c);  // idx must be increasing

  friend Form operator+(const Form& a, const Form& b);
  friend Form operator-(const Form& a, const Form& b);
  Form operator-() const;
  friend Form operator*(const Scalar& c, const Form& a);
  friend Form operator*(const Rational& c, const Form& a) { return Scalar(c) * a; }
  Form& operator+=(const Form& b) { return *this = *this + b; }
  Form& operator-=(const Form& b) { return *this = *this - b; }

  std::string str() const;

 private:
  AlgebraPtr alg_;
  int degree_ = 0;
  std::map<Indices, Scalar> coeffs_;  // increasing tuples, nonzero scalars

  friend class FrameAlgebra;
};

// Vector field given by its components in the frame dual to the coframe.
struct VectorField {
  AlgebraPtr alg;
  std::vector<Scalar> components;  // size n
};

// Symmetric tensor in the orthonormal coframe.
struct SymTensor {
  AlgebraPtr alg;
  std::vector<std::vector<Scalar>> comp;  // n x n, symmetric

  static SymTensor zero(AlgebraPtr a);
  static SymTensor identity(AlgebraPtr a);
  Scalar& at(int i, int j) { return comp[i][j]; }
  const Scalar& at(int i, int j) const { return comp[i][j]; }
  SymTensor scaled(const Scalar& c) const;
  friend SymTensor operator+(const SymTensor& x, const SymTensor& y);
  friend SymTensor operator-(const SymTensor& x, const SymTensor& y);
  Scalar trace() const;
};

// An abstract chart: declared-orthonormal coframe e^1..e^n with structure
// 2-forms de^i, plus scalar generators with declared differential 1-forms.
// The declared coframe is orthonormal and oriented by e^1 ^ ... ^ e^n.
class FrameAlgebra : public std::enable_shared_from_this<FrameAlgebra> {
 public:
  struct GeneratorInfo {
    std::string name;
    bool positive = false;
    Form differential;  // 1-form
  };

  static std::shared_ptr<FrameAlgebra> create(int dim, std::vector<std::string> coframe_names);

  int dim() const { return dim_; }
  const std::vector<std::string>& coframe_names() const { return coframe_names_; }

  void declare_structure(int i, Form de);           // i in 1..n
  void declare_generator(const std::string& name, bool positive, Form dg);
  bool has_generator(const std::string& name) const;
  const std::vector<GeneratorInfo>& generators() const { return generators_; }

  void set_sample_points(std::vector<Point> pts) { sample_points_ = std::move(pts); }
  const std::vector<Point>& sample_points() const { return sample_points_; }

  const Form& structure(int i) const { return structure_[i - 1]; }
  const Form& generator_differential(const std::string& name) const;

  // basis forms
  Form coframe(int i) const;          // e^i
  Form volume() const;                // e^{1..n}
  Form constant(const Scalar& c) const;  // 0-form

  // d^2 residual on every coframe element and generator; exact scalar zero
  // means the declared structure is integrable in the exact fragment
  struct IntegrabilityReport {
    bool exact_zero = true;
    double max_numeric_residual = 0.0;
  };
  IntegrabilityReport check_integrability(const std::vector<Point>& pts) const;

 private:
  FrameAlgebra(int dim, std::vector<std::string> names);

  int dim_;
  std::vector<std::string> coframe_names_;
  std::vector<Form> structure_;  // de^i, 2-forms
  std::vector<GeneratorInfo> generators_;
  std::vector<Point> sample_points_;
};

// ------------------------------------------------------------- operations

Form wedge(const Form& a, const Form& b);
Form d(const Form& a);
Form hodge(const Form& a);
Form interior(const VectorField& x, const Form& a);
Scalar metric_pair(const Form& a, const Form& b);
Scalar norm_sq(const Form& a);
// codifferential: dim 8 uses -*d*, dim 7 uses (-1)^k *d* on k-forms
Form codiff(const Form& a);
Scalar differential_pair(const Form& df, const VectorField& x);  // <df, X>
VectorField lie_bracket(const VectorField& x, const VectorField& y);
Form metric_dual(const VectorField& x);       // X^flat in the orthonormal frame
VectorField sharp(const Form& a);             // 1-form -> vector field

// numeric evaluation
struct NumericCoefficients {
  int degree;
  std::map<Indices, double> values;
};
NumericCoefficients eval_at(const Form& a, const Point& p);
double max_coefficient_deviation(const Form& a, const Form& b, const Point& p);
bool equals_numeric(const Form& a, const Form& b, const std::vector<Point>& pts, double tol);
bool equals_exact(const Form& a, const Form& b);
double max_abs_eval(const Form& a, const std::vector<Point>& pts);

// Lie derivative along X via Cartan's formula d(i_X a) + i_X(d a)
Form lie_derivative(const VectorField& x, const Form& a);

// Coframe rescaling: a new algebra with coframe ehat^i = factors[i] * e^i and
// transfer maps between the two (pure relabelling of the same chart).
struct RescaledAlgebra {
  std::shared_ptr<FrameAlgebra> algebra;
  std::function<Form(const Form&)> to_rescaled;
  std::function<Form(const Form&)> from_rescaled;
};
RescaledAlgebra rescale_coframe(const AlgebraPtr& alg, const std::vector<Scalar>& factors);

// General linear change of coframe: new legs Theta^a = sum_b P[a][b] e^b with
// an invertible scalar matrix P. Structure equations and generator
// differentials are rewritten in the new legs.
RescaledAlgebra change_coframe(const AlgebraPtr& alg, const std::vector<std::vector<Scalar>>& P,
                               std::vector<std::string> new_names = {});

// A chart map: pull forms on the target algebra back to the source algebra.
// Declares the image of every target coframe element and generator.
class FrameMap {
 public:
  FrameMap(AlgebraPtr target, AlgebraPtr source) : target_(std::move(target)), source_(std::move(source)) {}

  void set_coframe_image(int i, Form one_form_on_source);
  void set_generator_image(const std::string& name, Scalar value_on_source);

  Form pullback(const Form& on_target) const;
  Scalar pullback_scalar(const Scalar& on_target) const;

  // residual of d(pullback e^i) - pullback(de^i) and the generator analogue,
  // evaluated numerically; zero certifies the map is a chart morphism
  double consistency_residual(const std::vector<Point>& pts) const;

  const AlgebraPtr& target() const { return target_; }
  const AlgebraPtr& source() const { return source_; }

 private:
  AlgebraPtr target_, source_;
  std::vector<Form> coframe_images_;
  std::map<std::string, Scalar> generator_images_;
};

// deterministic sample point generation
std::vector<Point> random_points(const AlgebraPtr& alg, int count, uint64_t seed,
                                 double lo = 0.3, double hi = 1.7);

}  // namespace spinq
