#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinq/scalar.hpp"

using namespace spinq;

static Scalar gen(const char* n) { return Scalar::generator(n); }

TEST_CASE("rational arithmetic") {
  Rational a(1, 2), b(1, 3);
  CHECK(a + b == Rational(5, 6));
  CHECK(a * b == Rational(1, 6));
  CHECK(a / b == Rational(3, 2));
  CHECK((-a).num == -1);
  CHECK(Rational(4, -8) == Rational(-1, 2));
  CHECK(Rational(2).pow_int(10) == Rational(1024));
  CHECK(Rational(2, 3).pow_int(-2) == Rational(9, 4));
  CHECK(rational_gcd(Rational(1, 2), Rational(3, 4)) == Rational(1, 4));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("polynomial normal form") {
  Scalar x = gen("x"), y = gen("y");
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK((x + y).pow(Rational(2)) == x * x + Rational(2) * (x * y) + y * y);
  CHECK((x - x).is_zero());
  CHECK((x * y) == (y * x));
  Scalar z = (x + Scalar(1)).pow(Rational(3));
  Scalar w = x * x * x + Rational(3) * (x * x) + Rational(3) * x + Scalar(1);
  CHECK(z == w);
}

TEST_CASE("rational powers of generators merge") {
  Scalar r = gen("r");
  Scalar a = r.pow(Rational(4, 3)) * r.pow(Rational(2, 3));
  CHECK(a == r * r);
  Scalar b = r.pow(Rational(1, 2)) * r.pow(Rational(-1, 2));
  CHECK(b.is_one());
  // (r^3)^(4/3) = r^4
  Scalar c = (r * r * r).pow(Rational(4, 3));
  CHECK(c == r.pow(Rational(4)));
}

TEST_CASE("prime power extraction") {
  Scalar a = Scalar(8).pow(Rational(1, 2));
  Scalar b = Scalar(2) * Scalar(2).pow(Rational(1, 2));
  CHECK(a == b);
  CHECK(Scalar(4).pow(Rational(1, 2)) == Scalar(2));
  CHECK(Scalar(27).pow(Rational(1, 3)) == Scalar(3));
  CHECK(Scalar(Rational(4, 9)).pow(Rational(-1, 2)) == Scalar(Rational(3, 2)));
  CHECK(Scalar(-8).pow(Rational(1, 3)) == Scalar(-2));
  CHECK_THROWS(Scalar(-2).pow(Rational(1, 2)));
  // numeric agreement
  CHECK(Scalar(5).pow(Rational(3, 2)).eval({}) == doctest::Approx(std::pow(5.0, 1.5)));
}

TEST_CASE("powers of sums stay opaque but cancel") {
  Scalar x = gen("x");
  Scalar s = x * x + Scalar(1);
  Scalar h = s.pow(Rational(1, 2));
  CHECK(h * h == s);
  CHECK(h.pow(Rational(4)) == s * s);
  CHECK((h / h).is_one());
  // content is pulled out of the base
  Scalar a = (Rational(2) * s).pow(Rational(1, 2));
  CHECK(a == Scalar(2).pow(Rational(1, 2)) * h);
}

TEST_CASE("division reduction against sum bases") {
  Scalar x = gen("x"), y = gen("y");
  Scalar s = x + y;
  // (x^2 - y^2) / (x+y) = x - y exactly
  CHECK((x * x - y * y) * s.pow(Rational(-1)) == x - y);
  // (x+y)^(-1) * (x+y) = 1
  CHECK((s.pow(Rational(-1)) * s).is_one());
  // mixed: s^(-2) * (x^2+2xy+y^2) = 1
  Scalar sq = x * x + Rational(2) * (x * y) + y * y;
  CHECK((s.pow(Rational(-2)) * sq).is_one());
  // fractional exponent climbs when divisible
  CHECK(s.pow(Rational(1, 2)) * s == s.pow(Rational(3, 2)));
  // not divisible stays put and evaluates correctly
  Scalar q = (x * x + Scalar(1)) / s;
  double v = q.eval({{"x", 2.0}, {"y", 3.0}});
  CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("laurent content extraction") {
  Scalar x = gen("x"), y = gen("y");
  // x^{-1} y + y = y x^{-1} (1 + x)
  Scalar s = x.pow(Rational(-1)) * y + y;
  Scalar t = y * x.pow(Rational(-1)) * (Scalar(1) + x);
  CHECK(s == t);
  // and its square root is consistent
  CHECK(s.pow(Rational(1, 2)) * s.pow(Rational(1, 2)) == s);
}

TEST_CASE("derivative") {
  Scalar x = gen("x"), y = gen("y");
  Scalar f = x * x * y + x.pow(Rational(1, 2));
  Scalar fx = f.derivative("x");
  CHECK(fx == Rational(2) * (x * y) + Rational(1, 2) * x.pow(Rational(-1, 2)));
  CHECK(f.derivative("z").is_zero());
  // chain rule through a sum base
  Scalar g = (x * x + Scalar(1)).pow(Rational(1, 2));
  Scalar gx = g.derivative("x");
  CHECK(gx == x * (x * x + Scalar(1)).pow(Rational(-1, 2)));
  // d of constant power
  CHECK(Scalar(7).pow(Rational(1, 2)).derivative("x").is_zero());
}

TEST_CASE("substitution") {
  Scalar x = gen("x"), r = gen("r");
  Scalar f = x.pow(Rational(4, 3)) + Scalar(1);
  Scalar g = f.substitute({{"x", r * r * r}});
  CHECK(g == r.pow(Rational(4)) + Scalar(1));
}

TEST_CASE("evaluation domain errors") {
  Scalar x = gen("x");
  CHECK_THROWS(x.eval({}));
  CHECK_THROWS(x.pow(Rational(1, 2)).eval({{"x", -1.0}}));
  CHECK_THROWS(x.pow(Rational(-1)).eval({{"x", 0.0}}));
  CHECK(x.pow(Rational(1, 2)).eval({{"x", 4.0}}) == doctest::Approx(2.0));
}

TEST_CASE("prefix grammar round trip") {
  Scalar x = gen("x"), y = gen("y");
  Scalar f = Rational(3, 2) * (x * y.pow(Rational(2, 5))) - Scalar(7) + (x + y).pow(Rational(1, 2));
  Scalar g = parse_scalar(f.prefix_str());
  CHECK(f == g);
  CHECK(parse_scalar("(+ 1 (* 2 x))") == Scalar(1) + Rational(2) * x);
  CHECK(parse_scalar("(^ x -4/3)") == x.pow(Rational(-4, 3)));
  CHECK(parse_scalar("-3/4") == Scalar(Rational(-3, 4)));
  CHECK_THROWS(parse_scalar("(?"));
  CHECK_THROWS(parse_scalar("(+ 1"));
}
