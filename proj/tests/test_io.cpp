#include "doctest.h"

#include "charp/io.hpp"
#include "charp/parser.hpp"
#include "support.hpp"

#include <filesystem>
#include <fstream>

using namespace charp;

namespace {

const char* kCurve = R"(# comment
p=3
n=1
a2=t^2-1
a6=(t-1)^2*(t^2-t-1)^2
)";

HeightOptions at_multiple(long n) {
  HeightOptions o;
  o.multiple = n;
  return o;
}

}  // namespace

TEST_CASE("curve files") {
  const CurveFile cf = parse_curve_text(kCurve);
  CHECK(cf.spec.p == 3);
  CHECK(cf.curve.a() .a2 == fixture::ex9().E.a2());
  CHECK(cf.curve.a6() == fixture::ex9().E.a6());
  CHECK(cf.curve.a1().is_zero());
}

TEST_CASE("malformed curve files are parse errors") {
  CHECK_THROWS_AS(parse_curve_text("a2=t\n"), ParseError);
  CHECK_THROWS_AS(parse_curve_text("p=3\na2 t\n"), ParseError);
  CHECK_THROWS_AS(parse_curve_text("p=3\np=3\n"), ParseError);
  CHECK_THROWS_AS(parse_curve_text("p=3\nb2=1\n"), ParseError);
  CHECK_THROWS_AS(parse_curve_text("p=3\na2=t^^2\na6=1\n"), ParseError);
  CHECK_THROWS_AS(parse_curve_text("p=x\n"), ParseError);
  CHECK_THROWS_AS(parse_curve_text("p=3\nn=2\na6=t\n"), ParseError);
  CHECK_THROWS_AS(parse_curve_text("p=3\nmodulus=g^2+1\na6=t\n"), ParseError);
}

TEST_CASE("mathematically invalid curve files are math errors") {
  CHECK_THROWS_AS(parse_curve_text("p=3\na6=t\n"), MathError);  // y^2 = x^3 + t is singular
  CHECK_THROWS_AS(parse_curve_text("p=9\na6=t\n"), MathError);
  CHECK_THROWS_AS(parse_curve_text("p=2\na6=t\n"), MathError);
  CHECK_THROWS_AS(parse_curve_text("p=3\nn=2\nmodulus=g^2+g+1\na4=-1\na6=t\n"), MathError);
}

TEST_CASE("a curve over F_9") {
  const CurveFile cf = parse_curve_text("p=3\nn=2\nmodulus=g^2+1\na4=-1\na6=g*t\n");
  CHECK(cf.curve.field()->order() == 9);
  CHECK(format_ratfunc(cf.curve.a6()) == "g*t");
}

TEST_CASE("points and places") {
  const CurveFile cf = parse_curve_text(kCurve);
  const CurvePoint P = parse_point_text("x=0\ny=(t-1)*(t^2-t-1)\n", cf.curve);
  CHECK(P == fixture::ex9().P);
  CHECK_THROWS_AS(parse_point_text("x=0\n", cf.curve), ParseError);
  CHECK_THROWS_AS(parse_point_text("x=0\ny=1\nz=1\n", cf.curve), ParseError);
  CHECK_THROWS_AS(parse_point_text("x=0\ny=1\n", cf.curve), MathError);
  CHECK(load_point("O", cf).is_zero());
  CHECK_THROWS_AS(load_point("missing", cf), ParseError);

  const FieldPtr& F = cf.curve.field();
  CHECK(parse_place("inf", F).is_infinity());
  CHECK(parse_place("infinity", F).is_infinity());
  CHECK(parse_place("t", F) == fixture::place_t(F));
  CHECK(parse_place("t^2+1", F).degree() == 2);
  CHECK_THROWS_AS(parse_place("t^2-1", F), MathError);
  CHECK_THROWS_AS(parse_place("t+", F), ParseError);
}

TEST_CASE("curve and point files on disk") {
  const auto dir = std::filesystem::temp_directory_path() / "charp_io_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "e.curve") << kCurve;
  std::ofstream(dir / "Q.point") << "x=t^2-t\ny=t^2-1\n";
  const CurveFile cf = load_curve(dir / "e.curve");
  CHECK(cf.dir == dir);
  CHECK(load_point("Q", cf) == fixture::ex9().Q);
  CHECK(load_point((dir / "Q.point").string(), cf) == fixture::ex9().Q);
  CHECK_THROWS_AS(load_curve(dir / "none.curve"), ParseError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("uniformizer symbols") {
  const FieldPtr F = Field::prime(5);
  CHECK(uniformizer_text(fixture::place_t(F)) == "t");
  CHECK(uniformizer_text(Place::finite(fixture::rf(F, "t-1").num())) == "(t - 1)");
  CHECK(uniformizer_text(Place::finite(fixture::rf(F, "t^2+2").num())) == "pi");
  CHECK(uniformizer_text(Place::infinity(F)) == "t^-1");
}

TEST_CASE("sigma JSON") {
  const Series<RatFunc> s = exact_sigma_series(fixture::ex9().E, 9).series;
  const nlohmann::json j = nlohmann::json::parse(sigma_json(s).dump());
  CHECK(j["variable"] == "z");
  CHECK(j["precision"] == 9);
  REQUIRE(j["coefficients"].size() == 4);
  for (const auto& c : j["coefficients"]) {
    const long e = c[0].get<long>();
    CHECK(parse_ratfunc(c[1].get<std::string>(), fixture::ex9().F) == s.coeff(e));
  }
}

TEST_CASE("height JSON") {
  const auto& ex = fixture::ex9();
  const HeightValue h = canonical_height(ex.E, ex.Q, fixture::place_t(ex.F), 30, at_multiple(30));
  const nlohmann::json j = nlohmann::json::parse(height_json(h).dump());
  CHECK(j["place"] == "t");
  CHECK(j["exponent"] == "0");
  CHECK(j["multiple_used"] == 30);
  CHECK(j["root_applied"] == "1");
  CHECK(j["precision"] == 30);
  const nlohmann::json expected = nlohmann::json::parse(R"([[0,1],[3,-1],[18,1],[21,-1],[27,1]])");
  CHECK(j["unit_coefficients"] == expected);
  CHECK(rational_text(Rational(-3, 4)) == "-3/4");
}

TEST_CASE("golden comparison") {
  CHECK(trailing_order("1 - t^3 + O(t^30)\n") == 30);
  CHECK(trailing_order("t^12 + O(t^-3)") == -3);
  CHECK(trailing_order("z + O(z)") == 1);
  CHECK_FALSE(trailing_order("1 - t^3").has_value());

  const auto& ex = fixture::ex9();
  const Series<RatFunc> s = exact_sigma_series(ex.E, 9).series;
  CHECK(compare_sigma_golden(s, "z - (t^2 - 1)*z^3 + O(z^5)\n").match);
  CHECK_FALSE(compare_sigma_golden(s, "z + (t^2 - 1)*z^3 + O(z^5)\n").match);
  CHECK_THROWS_AS(compare_sigma_golden(s, "z + O(z^11)"), PrecisionError);
  CHECK_THROWS_AS(compare_sigma_golden(s, "z - (t^2 - 1)*z^3"), ParseError);

  const HeightValue h = canonical_height(ex.E, ex.Q, Place::infinity(ex.F), 40, at_multiple(6));
  CHECK(compare_height_golden(h, "t^30 - t^27 - t^21 + t^18 - t^3 + 1 + O(t^-3)").match);
  CHECK(compare_height_golden(h, "t^30 - t^27 - t^21 + O(t^20)").match);
  CHECK_FALSE(compare_height_golden(h, "t^30 + t^27 + O(t^20)").match);
}

TEST_CASE("labels follow the multiple the value belongs to") {
  const auto& ex = fixture::ex9();
  const Place t = fixture::place_t(ex.F);
  CHECK(height_label(canonical_height(ex.E, ex.P, t, 20, at_multiple(30)), "P") == "H_t(30P)");
  CHECK(height_label(canonical_height(ex.E, ex.P, t, 20), "P") == "H_t(3P)");
  CHECK(height_label(canonical_height(ex.E, ex.P, Place::infinity(ex.F), 20, at_multiple(6)), "Q") ==
        "H_inf(6Q)");
}

TEST_CASE("trim") {
  CHECK(trim("abc \n\n") == "abc");
  CHECK(trim("") == "");
}
