#include "spinq/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace spinq {

// ---------------------------------------------------------------- bases

Base Base::generator(std::string n) {
  Base b;
  b.kind = Kind::Generator;
  b.name = std::move(n);
  return b;
}

Base Base::prime_base(long long p) {
  Base b;
  b.kind = Kind::Prime;
  b.prime = p;
  return b;
}

Base Base::sum_base(ScalarPtr s) {
  Base b;
  b.kind = Kind::Sum;
  b.sum = std::move(s);
  return b;
}

int compare(const Base& a, const Base& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case Base::Kind::Generator:
      return a.name.compare(b.name) < 0 ? -1 : (a.name == b.name ? 0 : 1);
    case Base::Kind::Prime:
      return a.prime < b.prime ? -1 : (a.prime == b.prime ? 0 : 1);
    case Base::Kind::Sum:
      return Scalar::compare(*a.sum, *b.sum);
  }
  return 0;
}

static int compare(const Rational& a, const Rational& b) {
  if (a == b) return 0;
  return a < b ? -1 : 1;
}

int compare(const Factor& a, const Factor& b) {
  int c = compare(a.base, b.base);
  if (c) return c;
  return compare(a.exp, b.exp);
}

int compare_key(const Monomial& a, const Monomial& b) {
  size_t n = std::min(a.factors.size(), b.factors.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(a.factors[i], b.factors[i]);
    if (c) return c;
  }
  if (a.factors.size() != b.factors.size())
    return a.factors.size() < b.factors.size() ? -1 : 1;
  return 0;
}

int Scalar::compare(const Scalar& a, const Scalar& b) {
  size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare_key(a.terms_[i], b.terms_[i]);
    if (c) return c;
    c = spinq::compare(a.terms_[i].coef, b.terms_[i].coef);
    if (c) return c;
  }
  if (a.terms_.size() != b.terms_.size())
    return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

// ------------------------------------------------------- monomial builder

namespace {

struct PendingExpansion {
  ScalarPtr sum;
  long long power;  // >= 1
};

// Accumulates one monomial product; sum-factor exponents that land on a
// positive integer are queued for expansion.
struct MonoBuilder {
  Rational coef = Rational(1);
  std::vector<Factor> factors;  // kept sorted by base
  std::vector<PendingExpansion> pending;
  bool zero = false;

  void mul_rational(const Rational& r) {
    if (r.is_zero()) zero = true;
    coef *= r;
  }

  void add_power(const Base& base, const Rational& exp);
  std::vector<Monomial> finish();
};

std::vector<Monomial> raw_mul(const std::vector<Monomial>& a, const std::vector<Monomial>& b);
std::vector<Monomial> mono_times_factor_list(const Monomial& m, const Rational& coef,
                                             const std::vector<Factor>& fs);
void sort_and_collect(std::vector<Monomial>& terms);

void MonoBuilder::add_power(const Base& base, const Rational& exp) {
  if (exp.is_zero() || zero) return;
  Rational e = exp;
  if (base.kind == Base::Kind::Prime) {
    // fold the integer part so prime exponents live in (0,1)
    long long fl = e.num >= 0 ? e.num / e.den : -((-e.num + e.den - 1) / e.den);
    if (fl != 0) coef *= Rational(base.prime).pow_int(fl);
    e = e - Rational(fl);
    if (e.is_zero()) return;
  }
  auto it = std::lower_bound(factors.begin(), factors.end(), base,
                             [](const Factor& f, const Base& b) { return compare(f.base, b) < 0; });
  if (it != factors.end() && compare(it->base, base) == 0) {
    Rational merged = it->exp + e;
    factors.erase(it);
    if (!merged.is_zero()) add_power(base, merged);
    return;
  }
  if (base.kind == Base::Kind::Sum && e.is_integer() && e.num > 0) {
    pending.push_back({base.sum, e.num});
    return;
  }
  factors.insert(it, Factor{base, e});
}

std::vector<Monomial> MonoBuilder::finish() {
  if (zero || coef.is_zero()) return {};
  std::vector<Monomial> out{Monomial{coef, factors}};
  for (const auto& p : pending) {
    std::vector<Monomial> powed = p.sum->terms();
    for (long long i = 1; i < p.power; ++i) {
      powed = raw_mul(powed, p.sum->terms());
      sort_and_collect(powed);
    }
    out = raw_mul(out, powed);
    sort_and_collect(out);
  }
  return out;
}

std::vector<Monomial> mono_times_factor_list(const Monomial& m, const Rational& coef,
                                             const std::vector<Factor>& fs) {
  MonoBuilder b;
  b.mul_rational(m.coef);
  b.mul_rational(coef);
  for (const auto& f : m.factors) b.add_power(f.base, f.exp);
  for (const auto& f : fs) b.add_power(f.base, f.exp);
  return b.finish();
}

std::vector<Monomial> raw_mul(const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
  std::vector<Monomial> out;
  for (const auto& ma : a)
    for (const auto& mb : b) {
      auto r = mono_times_factor_list(ma, mb.coef, mb.factors);
      out.insert(out.end(), r.begin(), r.end());
    }
  return out;
}

void sort_and_collect(std::vector<Monomial>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Monomial& x, const Monomial& y) { return compare_key(x, y) < 0; });
  std::vector<Monomial> out;
  for (auto& t : terms) {
    if (t.coef.is_zero()) continue;
    if (!out.empty() && compare_key(out.back(), t) == 0) {
      out.back().coef += t.coef;
      if (out.back().coef.is_zero()) out.pop_back();
    } else {
      out.push_back(std::move(t));
    }
  }
  terms = std::move(out);
}

// ------------------------------------------------- exact division machinery

// Exponent-vector form of a monomial over a fixed base list.
using ExpVec = std::vector<Rational>;

struct VecPoly {
  // term: exponent vector -> coefficient, kept sorted descending in graded lex
  std::vector<std::pair<ExpVec, Rational>> terms;
};

Rational degree_of(const ExpVec& v) {
  Rational d(0);
  for (const auto& e : v) d += e;
  return d;
}

// graded lexicographic order, true if a > b
bool gl_greater(const ExpVec& a, const ExpVec& b) {
  Rational da = degree_of(a), db = degree_of(b);
  if (da != db) return db < da;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return b[i] < a[i];
  return false;
}

void vp_sort(VecPoly& p) {
  std::sort(p.terms.begin(), p.terms.end(),
            [](const auto& x, const auto& y) { return gl_greater(x.first, y.first); });
}

void vp_sub_scaled(VecPoly& g, const ExpVec& shift, const Rational& c, const VecPoly& s) {
  // g -= c * x^shift * s ; keeps g sorted
  std::vector<std::pair<ExpVec, Rational>> add;
  add.reserve(s.terms.size());
  for (const auto& [v, sc] : s.terms) {
    ExpVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = v[i] + shift[i];
    add.emplace_back(std::move(w), -(c * sc));
  }
  for (auto& t : add) g.terms.push_back(std::move(t));
  vp_sort(g);
  std::vector<std::pair<ExpVec, Rational>> out;
  for (auto& t : g.terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!t.second.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  g.terms = std::move(out);
}

// Exact division g / s in the Laurent-monomial sense; nullopt if not exact.
std::optional<VecPoly> vp_divide(VecPoly g, const VecPoly& s) {
  if (s.terms.empty()) return std::nullopt;
  VecPoly q;
  size_t limit = 16 + 4 * g.terms.size() * s.terms.size();
  size_t steps = 0;
  while (!g.terms.empty()) {
    if (++steps > limit) return std::nullopt;
    const auto& [gv, gc] = g.terms.front();
    const auto& [sv, sc] = s.terms.front();
    ExpVec shift(gv.size());
    for (size_t i = 0; i < gv.size(); ++i) shift[i] = gv[i] - sv[i];
    Rational c = gc / sc;
    q.terms.emplace_back(shift, c);
    vp_sub_scaled(g, shift, c, s);
  }
  vp_sort(q);
  return q;
}

bool base_list_lookup(std::vector<Base>& bases, const Base& b, size_t& idx) {
  for (size_t i = 0; i < bases.size(); ++i)
    if (compare(bases[i], b) == 0) { idx = i; return true; }
  return false;
}

// Reduce a group of unit monomials sharing a sum-factor signature: divide the
// polynomial part by each pure sum base while that division is exact.
struct Group {
  std::vector<Factor> signature;         // sum factors only
  std::vector<Monomial> units;           // monomials with gen/prime factors only
};

bool sum_is_pure(const Scalar& s) {
  for (const auto& m : s.terms())
    for (const auto& f : m.factors)
      if (f.base.kind == Base::Kind::Sum) return false;
  return true;
}

// converts unit monomials to exponent vectors over a common base list
VecPoly to_vecpoly(const std::vector<Monomial>& ms, std::vector<Base>& bases) {
  VecPoly p;
  for (const auto& m : ms) {
    ExpVec v(bases.size(), Rational(0));
    for (const auto& f : m.factors) {
      size_t idx;
      if (!base_list_lookup(bases, f.base, idx)) {
        idx = bases.size();
        bases.push_back(f.base);
        for (auto& t : p.terms) t.first.push_back(Rational(0));
        v.push_back(Rational(0));
      }
      v[idx] = f.exp;
    }
    v.resize(bases.size(), Rational(0));
    p.terms.emplace_back(std::move(v), m.coef);
  }
  for (auto& t : p.terms) t.first.resize(bases.size(), Rational(0));
  vp_sort(p);
  return p;
}

std::vector<Monomial> from_vecpoly(const VecPoly& p, const std::vector<Base>& bases) {
  std::vector<Monomial> out;
  for (const auto& [v, c] : p.terms) {
    MonoBuilder b;
    b.mul_rational(c);
    for (size_t i = 0; i < bases.size(); ++i)
      if (!v[i].is_zero()) b.add_power(bases[i], v[i]);
    auto r = b.finish();
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

// One reduction pass over the whole term list; returns true if anything changed.
bool group_reduce(std::vector<Monomial>& terms) {
  std::vector<Group> groups;
  for (auto& m : terms) {
    Group g;
    Monomial unit{m.coef, {}};
    for (const auto& f : m.factors) {
      if (f.base.kind == Base::Kind::Sum)
        g.signature.push_back(f);
      else
        unit.factors.push_back(f);
    }
    g.units.push_back(std::move(unit));
    bool merged = false;
    for (auto& gg : groups) {
      if (gg.signature.size() != g.signature.size()) continue;
      bool same = true;
      for (size_t i = 0; i < g.signature.size(); ++i)
        if (compare(gg.signature[i], g.signature[i]) != 0) { same = false; break; }
      if (same) {
        gg.units.push_back(g.units.front());
        merged = true;
        break;
      }
    }
    if (!merged) groups.push_back(std::move(g));
  }

  bool changed = false;
  std::vector<Monomial> rebuilt;
  for (auto& g : groups) {
    sort_and_collect(g.units);
    bool retry = true;
    while (retry) {
      retry = false;
      for (size_t si = 0; si < g.signature.size(); ++si) {
        const Scalar& S = *g.signature[si].base.sum;
        if (!sum_is_pure(S) || g.units.empty()) continue;
        std::vector<Base> bases;
        VecPoly sp = to_vecpoly(S.terms(), bases);
        VecPoly up = to_vecpoly(g.units, bases);
        // pad shorter vectors after shared base list growth
        for (auto& t : sp.terms) t.first.resize(bases.size(), Rational(0));
        vp_sort(sp);
        auto q = vp_divide(up, sp);
        if (!q) continue;
        g.units = from_vecpoly(*q, bases);
        sort_and_collect(g.units);
        changed = true;
        Rational ne = g.signature[si].exp + Rational(1);
        if (ne.is_zero()) {
          g.signature.erase(g.signature.begin() + si);
        } else if (ne.is_integer() && ne.num > 0) {
          // exponent became a positive integer: expand the factor back in
          std::vector<Monomial> powed = S.terms();
          for (long long k = 1; k < ne.num; ++k) {
            powed = raw_mul(powed, S.terms());
            sort_and_collect(powed);
          }
          g.units = raw_mul(g.units, powed);
          sort_and_collect(g.units);
          g.signature.erase(g.signature.begin() + si);
        } else {
          g.signature[si].exp = ne;
        }
        retry = true;
        break;
      }
    }
    for (const auto& u : g.units) {
      auto ms = mono_times_factor_list(u, Rational(1), g.signature);
      rebuilt.insert(rebuilt.end(), ms.begin(), ms.end());
    }
  }
  terms = std::move(rebuilt);
  sort_and_collect(terms);
  return changed;
}

}  // namespace

Scalar normalized(std::vector<Monomial> raw) {
  sort_and_collect(raw);
  for (int pass = 0; pass < 8; ++pass)
    if (!group_reduce(raw)) break;
  Scalar s;
  s.terms_ = std::move(raw);
  return s;
}

// ----------------------------------------------------------- public scalar

Scalar Scalar::generator(const std::string& name) {
  Scalar s;
  s.terms_.push_back({Rational(1), {Factor{Base::generator(name), Rational(1)}}});
  return s;
}

Scalar Scalar::from_terms(std::vector<Monomial> terms) { return normalized(std::move(terms)); }

Rational Scalar::rational_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].factors.empty()) return terms_[0].coef;
  throw std::domain_error("scalar: not a rational constant: " + str());
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  std::vector<Monomial> t = a.terms_;
  t.insert(t.end(), b.terms_.begin(), b.terms_.end());
  return normalized(std::move(t));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& m : r.terms_) m.coef = -m.coef;
  return r;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  return normalized(raw_mul(a.terms_, b.terms_));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.pow(Rational(-1)); }

bool operator==(const Scalar& a, const Scalar& b) { return Scalar::compare(a, b) == 0; }

namespace {

// factor a positive integer into primes by trial division
void push_prime_powers(long long v, const Rational& e, MonoBuilder& b) {
  for (long long p = 2; p * p <= v; ++p) {
    while (v % p == 0) {
      b.add_power(Base::prime_base(p), e);
      v /= p;
    }
  }
  if (v > 1) b.add_power(Base::prime_base(v), e);
}

// c^e for rational c and rational e, exact; appends to builder
void rational_power(const Rational& c, const Rational& e, MonoBuilder& b) {
  if (c.is_zero()) {
    if (e.num <= 0) throw std::domain_error("scalar: 0 to non-positive power");
    b.zero = true;
    return;
  }
  Rational a = c;
  if (a.is_negative()) {
    if (e.den % 2 == 0) throw std::domain_error("scalar: negative base under even root");
    if (e.num % 2 != 0) b.mul_rational(Rational(-1));
    a = -a;
  }
  if (e.is_integer()) {
    b.mul_rational(a.pow_int(e.num));
    return;
  }
  push_prime_powers(a.num, e, b);
  push_prime_powers(a.den, -e, b);
}

}  // namespace

Scalar Scalar::pow(const Rational& e) const {
  if (e.is_zero()) return Scalar(1);
  if (is_zero()) {
    if (e.num > 0) return Scalar(0);
    throw std::domain_error("scalar: zero to non-positive power");
  }
  if (e.is_integer() && e.num > 0) {
    Scalar acc = *this;
    for (long long i = 1; i < e.num; ++i) acc = acc * *this;
    return acc;
  }
  if (terms_.size() == 1) {
    const Monomial& m = terms_[0];
    MonoBuilder b;
    rational_power(m.coef, e, b);
    for (const auto& f : m.factors) b.add_power(f.base, f.exp * e);
    return normalized(b.finish());
  }
  // sum: extract monomial content, make the remainder a primitive base
  Rational content(0);
  for (const auto& m : terms_) content = rational_gcd(content, m.coef);
  if (terms_[0].coef.is_negative()) content = -content;
  // common base powers across every monomial (absent base counts as power 0,
  // so negative powers are pulled out too)
  std::vector<Factor> common;
  for (const auto& m : terms_)
    for (const auto& f : m.factors) {
      bool seen = false;
      for (const auto& c : common)
        if (spinq::compare(c.base, f.base) == 0) { seen = true; break; }
      if (!seen) common.push_back(Factor{f.base, Rational(0)});
    }
  for (auto& c : common) {
    Rational mn = Rational(0);
    bool first_m = true;
    for (const auto& m : terms_) {
      Rational e(0);
      for (const auto& f : m.factors)
        if (spinq::compare(f.base, c.base) == 0) { e = f.exp; break; }
      mn = first_m ? e : (e < mn ? e : mn);
      first_m = false;
    }
    c.exp = mn;
  }
  std::erase_if(common, [](const Factor& f) { return f.exp.is_zero(); });
  std::vector<Monomial> prim;
  for (const auto& m : terms_) {
    MonoBuilder b;
    b.mul_rational(m.coef / content);
    for (const auto& f : m.factors) b.add_power(f.base, f.exp);
    for (const auto& c : common) b.add_power(c.base, -c.exp);
    auto r = b.finish();
    prim.insert(prim.end(), r.begin(), r.end());
  }
  Scalar base = normalized(std::move(prim));
  MonoBuilder out;
  rational_power(content, e, out);
  for (const auto& c : common) out.add_power(c.base, c.exp * e);
  if (base.terms_.size() == 1) {
    // content extraction collapsed the sum
    const Monomial& m = base.terms_[0];
    rational_power(m.coef, e, out);
    for (const auto& f : m.factors) out.add_power(f.base, f.exp * e);
  } else {
    out.add_power(Base::sum_base(std::make_shared<const Scalar>(std::move(base))), e);
  }
  return normalized(out.finish());
}

Scalar Scalar::derivative(const std::string& gen) const {
  Scalar result;
  for (const auto& m : terms_) {
    for (size_t i = 0; i < m.factors.size(); ++i) {
      const Factor& f = m.factors[i];
      Scalar dbase;
      switch (f.base.kind) {
        case Base::Kind::Generator:
          if (f.base.name != gen) continue;
          dbase = Scalar(1);
          break;
        case Base::Kind::Prime:
          continue;
        case Base::Kind::Sum:
          dbase = f.base.sum->derivative(gen);
          if (dbase.is_zero()) continue;
          break;
      }
      // rest of the monomial
      Monomial rest{m.coef * f.exp, {}};
      for (size_t j = 0; j < m.factors.size(); ++j)
        if (j != i) rest.factors.push_back(m.factors[j]);
      Scalar base_scalar;
      switch (f.base.kind) {
        case Base::Kind::Generator: base_scalar = Scalar::generator(f.base.name); break;
        case Base::Kind::Prime: base_scalar = Scalar(f.base.prime); break;
        case Base::Kind::Sum: base_scalar = *f.base.sum; break;
      }
      Scalar term = normalized({rest}) * base_scalar.pow(f.exp - Rational(1)) * dbase;
      result += term;
    }
  }
  return result;
}

Scalar Scalar::substitute(const std::map<std::string, Scalar>& repl) const {
  Scalar result;
  for (const auto& m : terms_) {
    Scalar term(m.coef);
    for (const auto& f : m.factors) {
      Scalar base_scalar;
      switch (f.base.kind) {
        case Base::Kind::Generator: {
          auto it = repl.find(f.base.name);
          base_scalar = (it != repl.end()) ? it->second : Scalar::generator(f.base.name);
          break;
        }
        case Base::Kind::Prime: base_scalar = Scalar(f.base.prime); break;
        case Base::Kind::Sum: base_scalar = f.base.sum->substitute(repl); break;
      }
      term = term * base_scalar.pow(f.exp);
    }
    result += term;
  }
  return result;
}

double Scalar::eval(const Assignment& at) const {
  double acc = 0;
  for (const auto& m : terms_) {
    double v = m.coef.to_double();
    for (const auto& f : m.factors) {
      double base = 0;
      switch (f.base.kind) {
        case Base::Kind::Generator: {
          auto it = at.find(f.base.name);
          if (it == at.end())
            throw std::domain_error("eval: unassigned generator " + f.base.name);
          base = it->second;
          break;
        }
        case Base::Kind::Prime: base = static_cast<double>(f.base.prime); break;
        case Base::Kind::Sum: base = f.base.sum->eval(at); break;
      }
      if (base == 0.0 && f.exp.is_negative())
        throw std::domain_error("eval: zero base under negative power");
      if (base < 0.0 && !f.exp.is_integer())
        throw std::domain_error("eval: negative base under fractional power");
      v *= std::pow(base, f.exp.to_double());
    }
    acc += v;
  }
  return acc;
}

void Scalar::collect_generators(std::vector<std::string>& out) const {
  for (const auto& m : terms_)
    for (const auto& f : m.factors) {
      if (f.base.kind == Base::Kind::Generator) {
        if (std::find(out.begin(), out.end(), f.base.name) == out.end())
          out.push_back(f.base.name);
      } else if (f.base.kind == Base::Kind::Sum) {
        f.base.sum->collect_generators(out);
      }
    }
}

// ------------------------------------------------------------- printing

namespace {

std::string base_str(const Base& b, bool prefix) {
  switch (b.kind) {
    case Base::Kind::Generator: return b.name;
    case Base::Kind::Prime: return std::to_string(b.prime);
    case Base::Kind::Sum: return prefix ? b.sum->prefix_str() : "(" + b.sum->str() + ")";
  }
  return {};
}

}  // namespace

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& m : terms_) {
    Rational c = m.coef;
    if (!first) {
      os << (c.is_negative() ? " - " : " + ");
      if (c.is_negative()) c = -c;
    }
    first = false;
    bool wrote = false;
    if (!c.is_one() || m.factors.empty()) {
      os << c.str();
      wrote = true;
    }
    for (const auto& f : m.factors) {
      if (wrote) os << "*";
      os << base_str(f.base, false);
      if (!f.exp.is_one()) os << "^(" << f.exp.str() << ")";
      wrote = true;
    }
  }
  return os.str();
}

std::string Scalar::prefix_str() const {
  if (terms_.empty()) return "0";
  auto mono = [](const Monomial& m) {
    std::vector<std::string> parts;
    if (!m.coef.is_one() || m.factors.empty()) parts.push_back(m.coef.str());
    for (const auto& f : m.factors) {
      std::string b = base_str(f.base, true);
      if (f.exp.is_one())
        parts.push_back(b);
      else
        parts.push_back("(^ " + b + " " + f.exp.str() + ")");
    }
    if (parts.size() == 1) return parts[0];
    std::string s = "(*";
    for (const auto& p : parts) s += " " + p;
    return s + ")";
  };
  if (terms_.size() == 1) return mono(terms_[0]);
  std::string s = "(+";
  for (const auto& m : terms_) s += " " + mono(m);
  return s + ")";
}

// -------------------------------------------------------------- parsing

namespace {

struct Parser {
  const std::string& text;
  size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& why) {
    throw std::runtime_error("scalar parse error at offset " + std::to_string(pos) + ": " + why);
  }

  std::string token() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (start == pos) fail("expected token");
    return text.substr(start, pos - start);
  }

  Rational rational_token(const std::string& t) {
    size_t slash = t.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(t));
      return Rational(std::stoll(t.substr(0, slash)), std::stoll(t.substr(slash + 1)));
    } catch (const std::exception&) {
      fail("bad rational '" + t + "'");
    }
  }

  bool looks_rational(const std::string& t) {
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i])) && t[i] != '/') return false;
    return true;
  }

  Scalar expr() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end");
    if (text[pos] == '(') {
      ++pos;
      std::string op = token();
      Scalar result;
      if (op == "+") {
        result = Scalar(0);
        while (peek_not_close()) result += expr();
      } else if (op == "*") {
        result = Scalar(1);
        while (peek_not_close()) result *= expr();
      } else if (op == "^") {
        Scalar base = expr();
        std::string e = token();
        if (!looks_rational(e)) fail("power exponent must be rational");
        result = base.pow(rational_token(e));
      } else {
        fail("unknown operator '" + op + "'");
      }
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      return result;
    }
    std::string t = token();
    if (looks_rational(t)) return Scalar(rational_token(t));
    return Scalar::generator(t);
  }

  bool peek_not_close() {
    skip_ws();
    return pos < text.size() && text[pos] != ')';
  }
};

}  // namespace

Scalar parse_scalar(const std::string& text) {
  Parser p(text);
  Scalar s = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return s;
}

}  // namespace spinq
