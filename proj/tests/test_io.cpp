#include "doctest.h"
#include "test_support.hpp"

#include "valgeo/io.hpp"

using namespace valgeo;
using testing::qvec;
using testing::vec;

TEST_CASE("scalars read from strings, integers and decimals") {
  CHECK(scalar_from_json(Json("3/6")) == ratio(1, 2));
  CHECK(scalar_from_json(Json(-7)) == -7);
  CHECK(scalar_from_json(Json::parse("-0.5")) == ratio(-1, 2));
  CHECK(scalar_from_json(Json::parse("0.1")) == ratio(1, 10));
  CHECK(scalar_from_json(Json::parse("2.5e-3")) == ratio(1, 400));
  CHECK(scalar_from_json(Json("1e3")) == 1000);
  CHECK(scalar_to_json(ratio(-4, 6)) == Json("-2/3"));
  CHECK_THROWS_AS(scalar_from_json(Json::array()), Error);
  CHECK_THROWS_AS(scalar_from_json(Json("1/0")), Error);
}

TEST_CASE("polytopes round-trip and are hulled on input") {
  const Json in = Json::parse(R"({"n": 2, "vertices": [["0","0"],["1","0"],["0","1"],["1/4","1/4"]]})");
  const Polytope p = polytope_from_json(in);
  CHECK(p.vertices().size() == 3);
  CHECK(polytope_from_json(polytope_to_json(p)) == p);
  CHECK_THROWS_AS(polytope_from_json(Json::parse(R"({"n": 2, "vertices": [["0","0","0"]]})")), Error);
  CHECK_THROWS_AS(polytope_from_json(Json::parse(R"({"vertices": []})")), Error);
  CHECK(polytope_from_json(Json::parse(R"({"n": 3, "vertices": []})")).is_empty());
}

TEST_CASE("weights round-trip through JSON") {
  const std::vector<WeightSpec> ws = {
      WeightSpec::power(3),
      WeightSpec::abs_power(ratio(-1, 2)),
      WeightSpec::signed_power(ratio(3, 2), Side::Negative),
      WeightSpec::exp_neg(),
      WeightSpec::log_abs(),
      WeightSpec::indicator(ratio(-1, 3), 2),
      WeightSpec::polynomial({1, 0, ratio(3, 2)}),
      WeightSpec::constant(ratio(5, 7)),
      WeightSpec::tabulated({{0, 1}, {ratio(1, 2), -3}}, 4),
      WeightSpec::exp_neg().reflected(),
  };
  for (const auto& w : ws) {
    const Json j = weight_to_json(w);
    CHECK(weight_to_json(weight_from_json(j)) == j);
    CAPTURE(j.dump());
    for (const char* t : {"-3/2", "0", "1/3", "2"}) {
      const Scalar s = parse_scalar(t);
      if (w.kind == WeightKind::AbsPower && s == 0) continue;
      if (w.kind == WeightKind::LogAbs && s == 0) continue;
      CHECK(evaluate_double(weight_from_json(j), to_double(s)) == evaluate_double(w, to_double(s)));
    }
  }
  CHECK_THROWS_AS(weight_from_json(Json::parse(R"({"kind": "power", "p": "1/2"})")), Error);
  CHECK_THROWS_AS(weight_from_json(Json::parse(R"({"kind": "nope"})")), Error);
}

TEST_CASE("expressions round-trip and named forms expand") {
  const WeightSpec poly = WeightSpec::polynomial({1, 2});
  const WeightSpec ind = WeightSpec::indicator(0, 1);
  const ValuationExpr g = general_form(poly, ind, MeasureSpec::lebesgue(), WeightSpec::power(1), poly,
                                       MeasureSpec::with_density(ind));
  const Json j = expr_to_json(g);
  CHECK(expr_to_json(expr_from_json(j)) == j);

  const Json named = Json::parse(R"({"form": "general", "zeta1": {"kind": "poly", "coeffs": ["1", "2"]},
      "zeta2": {"kind": "indicator", "a": 0, "b": 1}, "mu": {"density": {"kind": "constant", "c": 1}},
      "zeta1_tilde": {"kind": "power", "p": 1}, "zeta2_tilde": {"kind": "poly", "coeffs": [1, 2]},
      "mu_tilde": {"density": {"kind": "indicator", "a": 0, "b": 1}, "atoms": []}})");
  const ValuationExpr e = expr_from_json(named);
  CHECK(e.terms.size() == g.terms.size());
  const Polytope p = convex_hull({vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1}), vec({-1, -1, -1})});
  const Vector x = qvec({"1/2", "-1", "2"});
  CHECK(classified_evaluate(p, x, e).exact_value() == classified_evaluate(p, x, g).exact_value());

  const ValuationExpr h = expr_from_json(Json::parse(R"({"form": "homogeneous", "q": 4, "n": 3, "c": [1, 0, 0, 0]})"));
  CHECK(expr_to_json(expr_from_json(expr_to_json(h))) == expr_to_json(h));

  const Json cone = Json::parse(R"({"terms": [{"kind": "cone_hull", "inner":
      {"kind": "measure", "measure": {"density": null, "atoms": []}, "coeff": "2"}}]})");
  CHECK(expr_to_json(expr_from_json(cone)) == cone);
  CHECK_THROWS_AS(expr_from_json(Json::parse(R"({"terms": []})")), Error);
  CHECK_THROWS_AS(expr_from_json(Json::parse(R"({"form": "unknown"})")), Error);
}

TEST_CASE("load_json accepts inline text and rejects malformed input") {
  CHECK(load_json(R"({"a": 1})").at("a") == 1);
  CHECK_THROWS_AS(load_json("{not json"), Error);
}
