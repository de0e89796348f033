#include "spinq/frame_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace spinq {

// ----------------------------------------------------------------- Form

Form Form::term(AlgebraPtr alg, Indices idx, Scalar c) {
  Form f(alg, static_cast<int>(idx.size()));
  int sign = sort_sign(idx);
  if (sign == 0 || c.is_zero()) return f;
  for (int i : idx)
    if (i < 1 || i > alg->dim()) throw std::domain_error("form: index out of range");
  if (sign < 0) c = -c;
  f.coeffs_[idx] = std::move(c);
  return f;
}

Scalar Form::coefficient(const Indices& idx) const {
  Indices sorted = idx;
  int sign = sort_sign(sorted);
  if (sign == 0) return Scalar(0);
  auto it = coeffs_.find(sorted);
  if (it == coeffs_.end()) return Scalar(0);
  return sign > 0 ? it->second : -it->second;
}

void Form::set_coefficient(const Indices& idx, Scalar c) {
  if (c.is_zero())
    coeffs_.erase(idx);
  else
    coeffs_[idx] = std::move(c);
}

static void check_same_algebra(const Form& a, const Form& b) {
  if (a.algebra() != b.algebra())
    throw std::domain_error("form: operands live on different frame algebras");
}

namespace {

// collects raw monomials per index tuple and normalizes once at the end
struct FormAccumulator {
  std::map<Indices, std::vector<Monomial>> acc;

  void add(const Indices& idx, const Scalar& s, bool negate = false) {
    auto& bucket = acc[idx];
    for (const auto& m : s.terms()) {
      bucket.push_back(m);
      if (negate) bucket.back().coef = -bucket.back().coef;
    }
  }

  void add_product(const Indices& idx, const Scalar& a, const Scalar& b, bool negate) {
    add(idx, a * b, negate);
  }

  Form finish(const AlgebraPtr& alg, int degree) {
    Form out(alg, degree);
    for (auto& [idx, terms] : acc) {
      Scalar s = Scalar::from_terms(std::move(terms));
      if (!s.is_zero()) out.set_coefficient(idx, std::move(s));
    }
    return out;
  }
};

}  // namespace

Form operator+(const Form& a, const Form& b) {
  check_same_algebra(a, b);
  if (a.degree() != b.degree()) throw std::domain_error("form: degree mismatch in sum");
  FormAccumulator acc;
  for (const auto& [idx, c] : a.coeffs_) acc.add(idx, c);
  for (const auto& [idx, c] : b.coeffs_) acc.add(idx, c);
  return acc.finish(a.algebra(), a.degree());
}

Form operator-(const Form& a, const Form& b) { return a + (-b); }

Form Form::operator-() const {
  Form out = *this;
  for (auto& [idx, c] : out.coeffs_) c = -c;
  return out;
}

Form operator*(const Scalar& c, const Form& a) {
  Form out(a.algebra(), a.degree());
  if (c.is_zero()) return out;
  for (const auto& [idx, v] : a.coeffs_) {
    Scalar s = c * v;
    if (!s.is_zero()) out.coeffs_[idx] = std::move(s);
  }
  return out;
}

std::string Form::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (size_t j = 0; j < idx.size(); ++j) os << (j ? "^" : " ") << alg_->coframe_names()[idx[j] - 1];
  }
  return os.str();
}

// ------------------------------------------------------------- SymTensor

SymTensor SymTensor::zero(AlgebraPtr a) {
  SymTensor t;
  int n = a->dim();
  t.alg = std::move(a);
  t.comp.assign(n, std::vector<Scalar>(n, Scalar(0)));
  return t;
}

SymTensor SymTensor::identity(AlgebraPtr a) {
  SymTensor t = zero(std::move(a));
  for (size_t i = 0; i < t.comp.size(); ++i) t.comp[i][i] = Scalar(1);
  return t;
}

SymTensor SymTensor::scaled(const Scalar& c) const {
  SymTensor t = *this;
  for (auto& row : t.comp)
    for (auto& v : row) v = c * v;
  return t;
}

SymTensor operator+(const SymTensor& x, const SymTensor& y) {
  SymTensor t = x;
  for (size_t i = 0; i < t.comp.size(); ++i)
    for (size_t j = 0; j < t.comp.size(); ++j) t.comp[i][j] += y.comp[i][j];
  return t;
}

SymTensor operator-(const SymTensor& x, const SymTensor& y) {
  SymTensor t = x;
  for (size_t i = 0; i < t.comp.size(); ++i)
    for (size_t j = 0; j < t.comp.size(); ++j) t.comp[i][j] -= y.comp[i][j];
  return t;
}

Scalar SymTensor::trace() const {
  Scalar s(0);
  for (size_t i = 0; i < comp.size(); ++i) s += comp[i][i];
  return s;
}

// ---------------------------------------------------------- FrameAlgebra

FrameAlgebra::FrameAlgebra(int dim, std::vector<std::string> names)
    : dim_(dim), coframe_names_(std::move(names)) {}

std::shared_ptr<FrameAlgebra> FrameAlgebra::create(int dim, std::vector<std::string> names) {
  if (names.empty()) {
    names.reserve(dim);
    for (int i = 1; i <= dim; ++i) names.push_back("e" + std::to_string(i));
  }
  if (static_cast<int>(names.size()) != dim)
    throw std::domain_error("frame algebra: coframe name count mismatch");
  auto alg = std::shared_ptr<FrameAlgebra>(new FrameAlgebra(dim, std::move(names)));
  alg->structure_.assign(dim, Form::zero(alg, 2));
  return alg;
}

void FrameAlgebra::declare_structure(int i, Form de) {
  if (i < 1 || i > dim_) throw std::domain_error("frame algebra: bad coframe index");
  if (!de.is_zero() && de.degree() != 2)
    throw std::domain_error("frame algebra: structure form must have degree 2");
  structure_[i - 1] = std::move(de);
}

void FrameAlgebra::declare_generator(const std::string& name, bool positive, Form dg) {
  if (!dg.is_zero() && dg.degree() != 1)
    throw std::domain_error("frame algebra: generator differential must have degree 1");
  for (const auto& g : generators_)
    if (g.name == name) throw std::domain_error("frame algebra: duplicate generator " + name);
  generators_.push_back({name, positive, std::move(dg)});
}

bool FrameAlgebra::has_generator(const std::string& name) const {
  for (const auto& g : generators_)
    if (g.name == name) return true;
  return false;
}

const Form& FrameAlgebra::generator_differential(const std::string& name) const {
  for (const auto& g : generators_)
    if (g.name == name) return g.differential;
  throw std::domain_error("frame algebra: unknown generator " + name);
}

Form FrameAlgebra::coframe(int i) const {
  return Form::term(shared_from_this(), {i}, Scalar(1));
}

Form FrameAlgebra::volume() const {
  Indices all(dim_);
  for (int i = 0; i < dim_; ++i) all[i] = i + 1;
  return Form::term(shared_from_this(), all, Scalar(1));
}

Form FrameAlgebra::constant(const Scalar& c) const {
  Form f(shared_from_this(), 0);
  if (!c.is_zero()) f.set_coefficient({}, c);
  return f;
}

FrameAlgebra::IntegrabilityReport FrameAlgebra::check_integrability(
    const std::vector<Point>& pts) const {
  IntegrabilityReport rep;
  auto self = shared_from_this();
  auto probe = [&](const Form& f) {
    Form dd = d(f);
    if (!dd.is_zero()) {
      rep.exact_zero = false;
      for (const auto& p : pts)
        rep.max_numeric_residual =
            std::max(rep.max_numeric_residual, max_coefficient_deviation(dd, Form::zero(self, dd.degree()), p));
    }
  };
  for (int i = 1; i <= dim_; ++i) probe(structure_[i - 1].is_zero() ? Form::zero(self, 2) : structure_[i - 1]);
  for (const auto& g : generators_) probe(g.differential.is_zero() ? Form::zero(self, 1) : g.differential);
  return rep;
}

// ------------------------------------------------------------ operations

Form wedge(const Form& a, const Form& b) {
  check_same_algebra(a, b);
  int deg = a.degree() + b.degree();
  if (deg > a.algebra()->dim()) return Form::zero(a.algebra(), deg);
  FormAccumulator acc;
  Indices merged;
  for (const auto& [ia, ca] : a.coefficients())
    for (const auto& [ib, cb] : b.coefficients()) {
      int sign = merge_sign(ia, ib, merged);
      if (sign == 0) continue;
      acc.add_product(merged, ca, cb, sign < 0);
    }
  return acc.finish(a.algebra(), deg);
}

// differential of a scalar as a 1-form, via declared generator differentials
static Form scalar_differential(const AlgebraPtr& alg, const Scalar& f) {
  Form df = Form::zero(alg, 1);
  std::vector<std::string> gens;
  f.collect_generators(gens);
  for (const auto& g : gens) {
    Scalar partial = f.derivative(g);
    if (partial.is_zero()) continue;
    df += partial * alg->generator_differential(g);
  }
  return df;
}

Form d(const Form& a) {
  const AlgebraPtr& alg = a.algebra();
  FormAccumulator acc;
  Indices merged;
  for (const auto& [idx, c] : a.coefficients()) {
    Form df = scalar_differential(alg, c);
    for (const auto& [di, dc] : df.coefficients()) {
      int sign = merge_sign(di, idx, merged);
      if (sign) acc.add(merged, dc, sign < 0);
    }
    // graded Leibniz across the coframe factors
    for (size_t j = 0; j < idx.size(); ++j) {
      const Form& de = alg->structure(idx[j]);
      if (de.is_zero()) continue;
      Indices prefix(idx.begin(), idx.begin() + j);
      Indices suffix(idx.begin() + j + 1, idx.end());
      bool flip = (j % 2 == 1);
      Indices tmp, full;
      for (const auto& [si, sc] : de.coefficients()) {
        int s1 = merge_sign(prefix, si, tmp);
        if (s1 == 0) continue;
        int s2 = merge_sign(tmp, suffix, full);
        if (s2 == 0) continue;
        bool neg = ((s1 * s2) < 0) != flip;
        acc.add_product(full, c, sc, neg);
      }
    }
  }
  return acc.finish(alg, a.degree() + 1);
}

Form hodge(const Form& a) {
  const AlgebraPtr& alg = a.algebra();
  int n = alg->dim();
  Form out(alg, n - a.degree());
  Indices comp;
  for (const auto& [idx, c] : a.coefficients()) {
    int sign = complement_sign(idx, n, comp);
    Scalar v = sign > 0 ? c : -c;
    Scalar cur = out.coefficient(comp) + v;
    out.set_coefficient(comp, std::move(cur));
  }
  return out;
}

Form interior(const VectorField& x, const Form& a) {
  if (x.alg != a.algebra()) throw std::domain_error("interior: algebra mismatch");
  if (a.degree() == 0) return Form(a.algebra(), -1);
  FormAccumulator acc;
  for (const auto& [idx, c] : a.coefficients()) {
    for (size_t j = 0; j < idx.size(); ++j) {
      const Scalar& xc = x.components[idx[j] - 1];
      if (xc.is_zero()) continue;
      Indices rest;
      rest.reserve(idx.size() - 1);
      for (size_t t = 0; t < idx.size(); ++t)
        if (t != j) rest.push_back(idx[t]);
      acc.add_product(rest, c, xc, j % 2 == 1);
    }
  }
  return acc.finish(a.algebra(), a.degree() - 1);
}

Scalar metric_pair(const Form& a, const Form& b) {
  check_same_algebra(a, b);
  if (a.degree() != b.degree()) throw std::domain_error("metric_pair: degree mismatch");
  Scalar s(0);
  for (const auto& [idx, c] : a.coefficients()) {
    Scalar bc = b.coefficient(idx);
    if (!bc.is_zero()) s += c * bc;
  }
  return s;
}

Scalar norm_sq(const Form& a) { return metric_pair(a, a); }

Form codiff(const Form& a) {
  int n = a.algebra()->dim();
  int k = a.degree();
  Form r = hodge(d(hodge(a)));
  long exp = static_cast<long>(n) * (k + 1) + 1;
  return (exp % 2 == 0) ? r : -r;
}

Scalar differential_pair(const Form& df, const VectorField& x) {
  if (df.degree() != 1) throw std::domain_error("differential_pair: need a 1-form");
  Scalar s(0);
  for (const auto& [idx, c] : df.coefficients()) s += c * x.components[idx[0] - 1];
  return s;
}

Form metric_dual(const VectorField& x) {
  Form f = Form::zero(x.alg, 1);
  for (int i = 1; i <= x.alg->dim(); ++i)
    if (!x.components[i - 1].is_zero()) f.set_coefficient({i}, x.components[i - 1]);
  return f;
}

VectorField sharp(const Form& a) {
  if (a.degree() != 1) throw std::domain_error("sharp: need a 1-form");
  VectorField x{a.algebra(), std::vector<Scalar>(a.algebra()->dim(), Scalar(0))};
  for (const auto& [idx, c] : a.coefficients()) x.components[idx[0] - 1] = c;
  return x;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  if (x.alg != y.alg) throw std::domain_error("lie_bracket: algebra mismatch");
  const AlgebraPtr& alg = x.alg;
  int n = alg->dim();
  VectorField out{alg, std::vector<Scalar>(n, Scalar(0))};
  for (int i = 0; i < n; ++i) {
    Scalar xi = differential_pair(scalar_differential(alg, y.components[i]), x);
    Scalar yi = differential_pair(scalar_differential(alg, x.components[i]), y);
    // non-coordinate frame correction: -de^i(X, Y)
    const Form& de = alg->structure(i + 1);
    Scalar corr(0);
    if (!de.is_zero()) {
      Form once = interior(x, de);
      corr = differential_pair(once, y);
    }
    out.components[i] = xi - yi - corr;
  }
  return out;
}

Form lie_derivative(const VectorField& x, const Form& a) {
  return d(interior(x, a)) + interior(x, d(a));
}

// ------------------------------------------------------ numeric evaluation

NumericCoefficients eval_at(const Form& a, const Point& p) {
  NumericCoefficients out;
  out.degree = a.degree();
  for (const auto& [idx, c] : a.coefficients()) out.values[idx] = c.eval(p.values);
  return out;
}

double max_coefficient_deviation(const Form& a, const Form& b, const Point& p) {
  double m = 0;
  auto scan = [&](const Form& f, const Form& g) {
    for (const auto& [idx, c] : f.coefficients()) {
      double va = c.eval(p.values);
      double vb = g.coefficient(idx).eval(p.values);
      m = std::max(m, std::fabs(va - vb));
    }
  };
  scan(a, b);
  // catch indices present only in b
  for (const auto& [idx, c] : b.coefficients())
    if (a.coefficients().find(idx) == a.coefficients().end())
      m = std::max(m, std::fabs(c.eval(p.values)));
  return m;
}

bool equals_numeric(const Form& a, const Form& b, const std::vector<Point>& pts, double tol) {
  for (const auto& p : pts)
    if (max_coefficient_deviation(a, b, p) > tol) return false;
  return true;
}

bool equals_exact(const Form& a, const Form& b) {
  if (a.degree() != b.degree()) return false;
  return (a - b).is_zero();
}

double max_abs_eval(const Form& a, const std::vector<Point>& pts) {
  double m = 0;
  for (const auto& p : pts)
    for (const auto& [idx, c] : a.coefficients()) m = std::max(m, std::fabs(c.eval(p.values)));
  return m;
}

// -------------------------------------------------------------- rescaling

RescaledAlgebra rescale_coframe(const AlgebraPtr& alg, const std::vector<Scalar>& factors) {
  int n = alg->dim();
  if (static_cast<int>(factors.size()) != n)
    throw std::domain_error("rescale: need one factor per coframe element");
  auto out = FrameAlgebra::create(n, alg->coframe_names());

  std::vector<Scalar> inv(n);
  for (int i = 0; i < n; ++i) inv[i] = factors[i].pow(Rational(-1));

  auto transfer = [n](const Form& f, const AlgebraPtr& to, const std::vector<Scalar>& per_leg) {
    Form g(to, f.degree());
    for (const auto& [idx, c] : f.coefficients()) {
      Scalar v = c;
      for (int i : idx) v = v * per_leg[i - 1];
      g.set_coefficient(idx, v);
    }
    return g;
  };

  RescaledAlgebra res;
  // ehat^i = factors[i] e^i, so a coefficient over e^I picks up prod 1/f_i
  res.to_rescaled = [transfer, out, inv](const Form& f) { return transfer(f, out, inv); };
  res.from_rescaled = [transfer, alg, factors](const Form& f) { return transfer(f, alg, factors); };

  for (int i = 1; i <= n; ++i) {
    Form de_old = alg->structure(i);
    Form d_fi = Form::zero(alg, 1);
    {
      // differential of the factor on the original algebra
      std::vector<std::string> gens;
      factors[i - 1].collect_generators(gens);
      for (const auto& g : gens) {
        Scalar partial = factors[i - 1].derivative(g);
        if (!partial.is_zero()) d_fi += partial * alg->generator_differential(g);
      }
    }
    Form de_new_old_frame = wedge(d_fi, alg->coframe(i)) + factors[i - 1] * de_old;
    out->declare_structure(i, res.to_rescaled(de_new_old_frame));
  }
  for (const auto& g : alg->generators())
    out->declare_generator(g.name, g.positive, res.to_rescaled(g.differential));
  out->set_sample_points(alg->sample_points());
  res.algebra = out;
  return res;
}

RescaledAlgebra change_coframe(const AlgebraPtr& alg, const std::vector<std::vector<Scalar>>& P,
                               std::vector<std::string> new_names) {
  int n = alg->dim();
  if (static_cast<int>(P.size()) != n)
    throw std::domain_error("change_coframe: matrix size mismatch");
  // invert P by solving against unit columns
  std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n, Scalar(0)));
  {
    // local Gaussian elimination over scalars
    std::vector<std::vector<Scalar>> m = P;
    for (int i = 0; i < n; ++i) m[i].resize(2 * n, Scalar(0)), m[i][n + i] = Scalar(1);
    for (int col = 0; col < n; ++col) {
      int piv = col;
      while (piv < n && m[piv][col].is_zero()) ++piv;
      if (piv == n) throw std::domain_error("change_coframe: singular matrix");
      std::swap(m[piv], m[col]);
      Scalar ic = m[col][col].pow(Rational(-1));
      for (int j = 0; j < 2 * n; ++j) m[col][j] = ic * m[col][j];
      for (int r = 0; r < n; ++r) {
        if (r == col || m[r][col].is_zero()) continue;
        Scalar f = m[r][col];
        for (int j = 0; j < 2 * n; ++j) m[r][j] -= f * m[col][j];
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  }
  if (new_names.empty()) new_names = alg->coframe_names();
  auto out = FrameAlgebra::create(n, std::move(new_names));

  // rewrite a form on `alg` in the new legs: e^b = sum_a inv[b][a] Theta^a
  auto to_new = [out, inv, n](const Form& f) {
    Form g = Form::zero(out, f.degree());
    for (const auto& [idx, c] : f.coefficients()) {
      // expand the product of substituted legs
      std::vector<std::pair<Indices, Scalar>> acc{{Indices{}, c}};
      for (int b : idx) {
        std::vector<std::pair<Indices, Scalar>> next;
        for (const auto& [partial, pc] : acc)
          for (int a = 1; a <= n; ++a) {
            const Scalar& w = inv[b - 1][a - 1];
            if (w.is_zero()) continue;
            Indices grown = partial;
            grown.push_back(a);
            next.emplace_back(std::move(grown), pc * w);
          }
        acc = std::move(next);
      }
      for (auto& [tuple, v] : acc) g += Form::term(out, tuple, v);
    }
    return g;
  };
  auto from_new = [alg, P, n](const Form& f) {
    Form g = Form::zero(alg, f.degree());
    for (const auto& [idx, c] : f.coefficients()) {
      std::vector<std::pair<Indices, Scalar>> acc{{Indices{}, c}};
      for (int a : idx) {
        std::vector<std::pair<Indices, Scalar>> next;
        for (const auto& [partial, pc] : acc)
          for (int b = 1; b <= n; ++b) {
            const Scalar& w = P[a - 1][b - 1];
            if (w.is_zero()) continue;
            Indices grown = partial;
            grown.push_back(b);
            next.emplace_back(std::move(grown), pc * w);
          }
        acc = std::move(next);
      }
      for (auto& [tuple, v] : acc) g += Form::term(alg, tuple, v);
    }
    return g;
  };

  for (int a = 1; a <= n; ++a) {
    // d(Theta^a) = d(sum_b P[a][b] e^b) computed on the old chart
    Form de = Form::zero(alg, 2);
    for (int b = 1; b <= n; ++b) {
      if (P[a - 1][b - 1].is_zero()) continue;
      Form dcoef = Form::zero(alg, 1);
      std::vector<std::string> gens;
      P[a - 1][b - 1].collect_generators(gens);
      for (const auto& g : gens) {
        Scalar partial = P[a - 1][b - 1].derivative(g);
        if (!partial.is_zero()) dcoef += partial * alg->generator_differential(g);
      }
      de += wedge(dcoef, alg->coframe(b)) + P[a - 1][b - 1] * alg->structure(b);
    }
    out->declare_structure(a, to_new(de));
  }
  for (const auto& g : alg->generators())
    out->declare_generator(g.name, g.positive, to_new(g.differential));
  out->set_sample_points(alg->sample_points());

  RescaledAlgebra res;
  res.algebra = out;
  res.to_rescaled = to_new;
  res.from_rescaled = from_new;
  return res;
}

// --------------------------------------------------------------- FrameMap

void FrameMap::set_coframe_image(int i, Form img) {
  if (coframe_images_.empty()) coframe_images_.assign(target_->dim(), Form());
  if (img.algebra() != source_) throw std::domain_error("frame map: image on wrong algebra");
  coframe_images_[i - 1] = std::move(img);
}

void FrameMap::set_generator_image(const std::string& name, Scalar value) {
  generator_images_[name] = std::move(value);
}

Scalar FrameMap::pullback_scalar(const Scalar& c) const {
  return c.substitute(generator_images_);
}

Form FrameMap::pullback(const Form& f) const {
  if (f.algebra() != target_) throw std::domain_error("frame map: form not on target algebra");
  Form out = Form::zero(source_, f.degree());
  for (const auto& [idx, c] : f.coefficients()) {
    Form piece = source_->constant(pullback_scalar(c));
    for (int i : idx) piece = wedge(piece, coframe_images_[i - 1]);
    out += piece;
  }
  return out;
}

double FrameMap::consistency_residual(const std::vector<Point>& pts) const {
  double m = 0;
  for (int i = 1; i <= target_->dim(); ++i) {
    Form lhs = d(coframe_images_[i - 1]);
    Form rhs = pullback(target_->structure(i).is_zero() ? Form::zero(target_, 2)
                                                        : target_->structure(i));
    for (const auto& p : pts) m = std::max(m, max_coefficient_deviation(lhs, rhs, p));
  }
  for (const auto& g : target_->generators()) {
    auto it = generator_images_.find(g.name);
    if (it == generator_images_.end()) continue;
    Form lhs = d(source_->constant(it->second));
    Form rhs = pullback(g.differential.is_zero() ? Form::zero(target_, 1) : g.differential);
    for (const auto& p : pts) m = std::max(m, max_coefficient_deviation(lhs, rhs, p));
  }
  return m;
}

std::vector<Point> random_points(const AlgebraPtr& alg, int count, uint64_t seed, double lo,
                                 double hi) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Point> pts;
  pts.reserve(count);
  for (int k = 0; k < count; ++k) {
    Point p;
    for (const auto& g : alg->generators()) {
      double v = lo + (hi - lo) * unit();
      if (!g.positive) {
        // allow signed values for unconstrained generators
        if (unit() < 0.5) v = -v;
      }
      p.values[g.name] = v;
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace spinq
