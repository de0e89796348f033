#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinq/json_io.hpp"

using namespace spinq;

TEST_CASE("algebra json round trip is byte stable") {
  std::shared_ptr<FrameAlgebra> a = FrameAlgebra::create(3, {"e1", "e2", "e3"});
  Scalar r = Scalar::generator("r");
  a->declare_structure(3, (Rational(2) * r) * Form::term(a, {1, 2}, Scalar(1)));
  a->declare_generator("r", true, r.pow(Rational(1, 3)) * a->coframe(1));
  std::string s1 = algebra_to_json(*a);
  auto b = algebra_from_json(s1);
  std::string s2 = algebra_to_json(*b);
  CHECK(s1 == s2);
  CHECK(b->dim() == 3);
  CHECK(equals_exact(b->structure(3), (Rational(2) * Scalar::generator("r")) *
                                          Form::term(b, {1, 2}, Scalar(1))));
  CHECK(b->generators().size() == 1);
  CHECK(b->generators()[0].positive);
}

TEST_CASE("form json round trip") {
  std::shared_ptr<FrameAlgebra> a = FrameAlgebra::create(4, {});
  a->declare_generator("x", false, a->coframe(1));
  Scalar x = Scalar::generator("x");
  Form f = (x * x) * Form::term(a, {1, 3}, Scalar(1)) + Form::term(a, {2, 4}, Scalar(Rational(-7, 3)));
  Form g = form_from_json(a, form_to_json(f));
  CHECK(equals_exact(f, g));
}

TEST_CASE("json parse errors are reported") {
  CHECK_THROWS(algebra_from_json("{"));
  CHECK_THROWS(algebra_from_json(R"({"dim": 2, "coframe": ["a","b"], "structure": {"c": []}})"));
}
