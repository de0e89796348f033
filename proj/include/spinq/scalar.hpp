#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spinq/rational.hpp"

namespace spinq {

class Scalar;
using ScalarPtr = std::shared_ptr<const Scalar>;

// A power-factor base: a named generator, a prime integer, or a canonical
// sum of monomials (primitive, at least two terms).
struct Base {
  enum class Kind { Generator, Prime, Sum } kind;
  std::string name;   // Generator
  long long prime = 0;  // Prime
  ScalarPtr sum;      // Sum

  static Base generator(std::string n);
  static Base prime_base(long long p);
  static Base sum_base(ScalarPtr s);
};

int compare(const Base& a, const Base& b);

struct Factor {
  Base base;
  Rational exp;  // nonzero; for Sum bases never a non-negative integer
};

int compare(const Factor& a, const Factor& b);

struct Monomial {
  Rational coef;
  std::vector<Factor> factors;  // sorted by base, unique bases
};

// compares the factor keys only (not coefficients)
int compare_key(const Monomial& a, const Monomial& b);

// Assignment of numeric values to generators.
using Assignment = std::map<std::string, double>;

// Canonical symbolic scalar: a sum of monomials over rational powers of
// generators, primes and sub-sums. Structural equality decides semantic
// equality within this grammar (polynomial relations between distinct sum
// bases are reduced by exact division, see normalize()).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long n) { if (n) terms_.push_back({Rational(n), {}}); }
  Scalar(const Rational& r) { if (!r.is_zero()) terms_.push_back({r, {}}); }

  static Scalar generator(const std::string& name);
  static Scalar from_terms(std::vector<Monomial> terms);  // normalizes

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].factors.empty());
  }
  Rational rational_value() const;  // throws if !is_rational
  bool is_one() const { return is_rational() && !is_zero() && rational_value().is_one(); }

  const std::vector<Monomial>& terms() const { return terms_; }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);  // b^(-1) * a
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // this^(p/q); fractional powers of negative rationals with even root throw
  Scalar pow(const Rational& e) const;

  // partial derivative with respect to a generator
  Scalar derivative(const std::string& gen) const;

  // substitute generators by scalars (generators absent from the map are kept)
  Scalar substitute(const std::map<std::string, Scalar>& repl) const;

  double eval(const Assignment& at) const;

  void collect_generators(std::vector<std::string>& out) const;

  std::string str() const;          // human-readable infix
  std::string prefix_str() const;   // "(+ ...)" prefix grammar used by JSON files

  static int compare(const Scalar& a, const Scalar& b);

 private:
  std::vector<Monomial> terms_;  // canonical: sorted by key, unique, nonzero

  friend Scalar normalized(std::vector<Monomial> raw);
};

// Parse the prefix coefficient grammar: (+ ...), (* ...), (^ base p/q),
// rationals "p/q", generator names.
Scalar parse_scalar(const std::string& text);

inline Scalar operator*(const Rational& r, const Scalar& s) { return Scalar(r) * s; }

}  // namespace spinq
