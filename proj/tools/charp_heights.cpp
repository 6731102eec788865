#include "charp/errors.hpp"
#include "charp/io.hpp"
#include "charp/parser.hpp"
#include "charp/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <sstream>

using namespace charp;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kParse = 2, kMath = 3, kPrecision = 4 };

struct Common {
  std::string curve;
  bool json = false;
  bool attest_minimal = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--curve", c.curve, "curve file (key=value lines)")->required();
  sub->add_flag("--json", c.json, "JSON output");
  sub->add_flag("--attest-minimal", c.attest_minimal, "skip the finite-place minimality check");
}

int golden_exit(const GoldenResult& g) {
  if (g.match) return kOk;
  std::cerr << "golden mismatch\n  expected: " << g.expected << "\n  actual:   " << g.actual << "\n";
  return kVerifyFailed;
}

// ---------------------------------------------------------------------------

struct SigmaArgs {
  Common c;
  long zprec = 9;
  std::string golden;
};

int cmd_sigma(const SigmaArgs& a) {
  const CurveFile cf = load_curve(a.c.curve);
  check_finite_minimality(cf.curve, a.c.attest_minimal);
  const Series<RatFunc> s = exact_sigma_series(cf.curve, a.zprec).series;
  if (!a.golden.empty()) return golden_exit(compare_sigma_golden(s, read_file(a.golden)));
  if (a.c.json) {
    std::cout << sigma_json(s).dump(2) << "\n";
  } else {
    std::cout << render_sigma(s) << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct HeightArgs {
  Common c;
  std::string point, with, place = "t", golden;
  long vprec = 48;
  std::optional<long> multiple;
};

int cmd_height(const HeightArgs& a) {
  const CurveFile cf = load_curve(a.c.curve);
  const CurvePoint P = load_point(a.point, cf);
  const Place v = parse_place(a.place, cf.curve.field());
  HeightOptions o;
  o.multiple = a.multiple;
  o.attest_minimal = a.c.attest_minimal;
  HeightValue h;
  std::string name = a.point;
  if (a.with.empty()) {
    h = canonical_height(cf.curve, P, v, a.vprec, o);
  } else {
    h = pairing(cf.curve, P, load_point(a.with, cf), v, a.vprec, o);
    name = a.point + "," + a.with;
  }
  if (!a.golden.empty()) return golden_exit(compare_height_golden(h, read_file(a.golden)));
  if (a.c.json) {
    std::cout << height_json(h).dump(2) << "\n";
    return kOk;
  }
  if (a.with.empty() && P.is_zero()) {
    std::cout << "1\n";
    return kOk;
  }
  std::string label = height_label(h, name);
  if (!a.with.empty()) label = "<" + label.substr(label.find('(') + 1, label.size() - label.find('(') - 2) +
                               ">_" + label.substr(2, label.find('(') - 2);
  std::cout << label << " = " << render_height(h) << "\n";
  std::cout << "multiple " << h.multiple_used << ", root " << rational_text(h.root_applied) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  Common c;
  std::vector<std::string> points, places;
  long vprec = 40;
  long zprec = 9;
  std::string golden_dir;
};

struct CorpusLine {
  std::string kind, point, place, multiple, prec, file;
};

std::vector<CheckResult> run_corpus(const std::filesystem::path& dir) {
  std::vector<CheckResult> out;
  std::istringstream in(read_file(dir / "corpus.txt"));
  std::string line;
  std::optional<CurveFile> cf;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "curve") {
      std::string file;
      ls >> file;
      cf = load_curve(dir / file);
      continue;
    }
    if (!cf) throw ParseError("corpus line before any curve line");
    CorpusLine c{head, "", "", "", "", ""};
    ls >> c.point >> c.place >> c.multiple >> c.prec >> c.file;
    if (c.file.empty()) throw ParseError("corpus line needs 6 fields: " + line);
    CheckResult r{"golden " + c.file, CheckStatus::Pass, {}};
    GoldenResult g;
    const std::string expected = read_file(dir / c.file);
    const long prec = std::stol(c.prec);
    if (c.kind == "sigma") {
      g = compare_sigma_golden(exact_sigma_series(cf->curve, prec).series, expected);
    } else if (c.kind == "height") {
      HeightOptions o;
      if (c.multiple != "-") o.multiple = std::stol(c.multiple);
      const Place v = parse_place(c.place, cf->curve.field());
      g = compare_height_golden(canonical_height(cf->curve, load_point(c.point, *cf), v, prec, o), expected);
    } else {
      throw ParseError("unknown corpus entry " + c.kind);
    }
    if (!g.match) {
      r.status = CheckStatus::Fail;
      r.detail = "got " + g.actual;
    }
    out.push_back(r);
  }
  return out;
}

int cmd_verify(const VerifyArgs& a) {
  const CurveFile cf = load_curve(a.c.curve);
  VerifyOptions o;
  o.vprec = a.vprec;
  o.zprec = a.zprec;
  o.attest_minimal = a.c.attest_minimal;
  for (const auto& s : a.points) o.points.emplace_back(s, load_point(s, cf));
  if (a.places.empty()) {
    for (const char* s : {"t", "inf"}) o.places.push_back(parse_place(s, cf.curve.field()));
  } else {
    for (const auto& s : a.places) o.places.push_back(parse_place(s, cf.curve.field()));
  }
  // refuse supersingular curves outright
  if (hasse_invariant(cf.curve).is_zero()) throw MathError("curve is supersingular (Hasse invariant 0)");
  std::vector<CheckResult> results = verify_curve(cf.curve, o);
  if (!a.golden_dir.empty()) {
    for (auto& r : run_corpus(a.golden_dir)) results.push_back(std::move(r));
  }
  bool ok = true;
  for (const auto& r : results) ok = ok && r.status != CheckStatus::Fail;
  if (a.c.json) {
    json checks = json::array();
    for (const auto& r : results) {
      checks.push_back({{"name", r.name}, {"status", to_string(r.status)}, {"detail", r.detail}});
    }
    std::cout << json{{"passed", ok}, {"checks", checks}}.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      std::cout << to_string(r.status) << "  " << r.name;
      if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
      std::cout << "\n";
    }
    std::cout << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------

int cmd_info(const Common& c) {
  const CurveFile cf = load_curve(c.curve);
  const Curve& E = cf.curve;
  const RatFunc alpha = hasse_invariant(E);
  json j;
  j["discriminant"] = format_ratfunc(E.discriminant());
  j["hasse_invariant"] = format_ratfunc(alpha);
  json places = json::array();
  auto describe = [&](const Place& v) {
    try {
      const ReductionInfo ri = reduction_info(E, v);
      places.push_back({{"place", v.name()},
                        {"reduction", to_string(ri.type)},
                        {"ordinary", ri.ordinary},
                        {"ord_disc", ri.ord_disc}});
    } catch (const MathError& e) {
      places.push_back({{"place", v.name()}, {"error", e.what()}});
    }
  };
  for (const Place& v : bad_places(E)) describe(v);
  describe(Place::infinity(E.field()));
  j["bad_places"] = places;
  if (c.json) {
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "discriminant " << j["discriminant"].get<std::string>() << "\n";
  std::cout << "hasse invariant " << j["hasse_invariant"].get<std::string>() << "\n";
  for (const auto& p : places) {
    std::cout << "place " << p["place"].get<std::string>() << ": ";
    if (p.contains("error")) {
      std::cout << p["error"].get<std::string>() << "\n";
    } else {
      std::cout << p["reduction"].get<std::string>() << (p["ordinary"].get<bool>() ? ", ordinary" : "")
                << ", ord disc " << p["ord_disc"].get<int>() << "\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical heights and Mazur-Tate sigma functions over F_q(t)"};
  app.require_subcommand(1);

  SigmaArgs sa;
  auto* sigma = app.add_subcommand("sigma", "print sigma(z) over F_q(t)");
  add_common(sigma, sa.c);
  sigma->add_option("--zprec", sa.zprec, "z-adic precision")->check(CLI::PositiveNumber);
  sigma->add_option("--golden", sa.golden, "compare against an expected file");

  HeightArgs ha;
  auto* height = app.add_subcommand("height", "canonical v-adic height of a point");
  add_common(height, ha.c);
  height->add_option("--point", ha.point, "O, a point file, or NAME for NAME.point")->required();
  height->add_option("--with", ha.with, "second point: print the pairing instead");
  height->add_option("--place", ha.place, "inf or a monic irreducible in t");
  height->add_option("--vprec", ha.vprec, "digits of the unit part")->check(CLI::PositiveNumber);
  height->add_option("--multiple", ha.multiple, "evaluate at this multiple, no root")->check(CLI::PositiveNumber);
  height->add_option("--golden", ha.golden, "compare against an expected file");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  add_common(verify, va.c);
  verify->add_option("--point", va.points, "points to exercise");
  verify->add_option("--place", va.places, "places (default: t and inf)");
  verify->add_option("--vprec", va.vprec, "v-adic precision")->check(CLI::PositiveNumber);
  verify->add_option("--zprec", va.zprec, "z-adic precision")->check(CLI::PositiveNumber);
  verify->add_option("--golden-dir", va.golden_dir, "directory with corpus.txt");

  Common ic;
  auto* info = app.add_subcommand("info", "discriminant, Hasse invariant, reduction types");
  add_common(info, ic);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    if (*sigma) return cmd_sigma(sa);
    if (*height) return cmd_height(ha);
    if (*verify) return cmd_verify(va);
    if (*info) return cmd_info(ic);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return kPrecision;
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMath;
  }
  return kOk;
}
