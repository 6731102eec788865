#pragma once

#include "charp/heights.hpp"

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

namespace charp {

/// A curve read from a key=value file, with the directory it came from.
struct CurveFile {
  FieldSpec spec;
  Curve curve;
  std::filesystem::path dir;
};

/// Keys p, n, modulus (a polynomial in g, n > 1 only), a1 a2 a3 a4 a6.
/// Blank lines and '#' comments are ignored; missing a_i default to 0.
CurveFile parse_curve_text(const std::string& text);
CurveFile load_curve(const std::filesystem::path& path);

/// Keys x, y. The point must lie on the curve.
CurvePoint parse_point_text(const std::string& text, const Curve& E);
/// "O", a path to a point file, or NAME meaning NAME.point beside the curve.
CurvePoint load_point(const std::string& spec, const CurveFile& cf);

/// "inf" or a monic irreducible polynomial in t.
Place parse_place(const std::string& text, const FieldPtr& f);

// ---------------------------------------------------------------------------
// rendering

/// "z - (t^2 - 1)*z^3 + ... + O(z^9)".
std::string render_sigma(const Series<RatFunc>& s, const std::string& var = "z");

/// The symbol printed for the uniformizer: "t", "(t - 1)", "pi", or "t^-1" at infinity.
std::string uniformizer_text(const Place& v);

/// The height series as printed; at infinity in descending powers of t.
/// digits limits the unit part to that many known digits.
std::string render_height(const HeightValue& h, std::optional<long> digits = {});

/// "H_t(30P)" style label; the multiple shown is the one the value belongs to.
std::string height_label(const HeightValue& h, const std::string& point_name);

nlohmann::json sigma_json(const Series<RatFunc>& s);
nlohmann::json height_json(const HeightValue& h);
std::string rational_text(const Rational& r);

// ---------------------------------------------------------------------------
// golden comparison

/// Precision n read from a trailing "O(x^n)" or "O(x)"; nullopt if absent.
std::optional<long> trailing_order(const std::string& text);

struct GoldenResult {
  bool match = false;
  std::string expected, actual;
};

/// Renders the computed value cut to the golden file's O-term and compares bytes.
GoldenResult compare_sigma_golden(const Series<RatFunc>& s, const std::string& expected);
GoldenResult compare_height_golden(const HeightValue& h, const std::string& expected);

std::string read_file(const std::filesystem::path& path);
/// Strips trailing whitespace and newlines.
std::string trim(std::string s);

}  // namespace charp
