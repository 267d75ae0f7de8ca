// Manifest parsing and the report pipeline: field validation with precise
// messages, default materialization, canonical echo, subcommand smoke tests,
// and text rendering.

#include <gtest/gtest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "loopcalc/error.hpp"
#include "loopcalc/manifest.hpp"
#include "loopcalc/report.hpp"
#include "loopcalc/sphere_table.hpp"

namespace loopcalc {
namespace {

using nlohmann::json;

Manifest parse(const std::string& text) { return parse_manifest_text(text); }

void expect_bad_spec(const std::string& text, const std::string& needle) {
  try {
    parse(text);
    FAIL() << "expected BadSpec for: " << text;
  } catch (const BadSpec& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)
        << "message was: " << e.what();
  }
}

// --------------------------------------------------------------------------
// Parsing
// --------------------------------------------------------------------------

TEST(ManifestParse, EvenDefaultsMaterialize) {
  Manifest mf = parse(R"({"type": "pd-even", "n": 3, "d": 2})");
  EXPECT_EQ(mf.type, Manifest::Type::pd_even);
  EXPECT_EQ(mf.n, 3);
  EXPECT_EQ(mf.d, 2);
  EXPECT_EQ(mf.cutoff, 20);
  EXPECT_EQ(mf.kmax, 20);
}

TEST(ManifestParse, OddWithTorsion) {
  Manifest mf = parse(R"({"type": "pd-odd", "n": 2, "d": 1,
                          "torsion": [{"p": 2, "r": 3}],
                          "cutoff": 12, "kmax": 10})");
  EXPECT_EQ(mf.type, Manifest::Type::pd_odd);
  ASSERT_EQ(mf.torsion.size(), 1u);
  EXPECT_EQ(mf.torsion[0].p, 2);
  EXPECT_EQ(mf.torsion[0].r, 3);
  EXPECT_EQ(mf.torsion[0].mult, 1);  // defaulted
  EXPECT_EQ(mf.cutoff, 12);
  EXPECT_EQ(mf.kmax, 10);
}

TEST(ManifestParse, FourRequiresAWellFormedZ) {
  Manifest mf = parse(R"({"type": "pd-four", "d": 1,
                          "z": {"n": 2, "d": 1}, "cutoff": 10})");
  EXPECT_EQ(mf.type, Manifest::Type::pd_four);
  EXPECT_EQ(mf.z_d, 1);
  EXPECT_NO_THROW(
      parse(R"({"type": "pd-four", "d": 0, "z": {"n": 2, "d": 0,
                "torsion": []}})"));
  expect_bad_spec(R"({"type": "pd-four", "d": 1, "z": {"n": 3, "d": 1}})",
                  "\"z.n\" must lie in [2, 2]");
  expect_bad_spec(R"({"type": "pd-four", "d": 1,
                      "z": {"n": 2, "d": 1, "torsion": [{"p": 2, "r": 1}]}})",
                  "torsion-free");
  expect_bad_spec(R"({"type": "pd-four", "d": 1})", "missing field \"z\"");
}

TEST(ManifestParse, AttachmentWedge) {
  Manifest mf = parse(R"({"type": "attachment", "m": 3, "n": 4,
                          "x": [{"kind": "sphere", "dim": 5},
                                {"kind": "moore", "dim": 6, "order": 8,
                                 "mult": 2}],
                          "cutoff": 12})");
  EXPECT_EQ(mf.m, 3);
  EXPECT_EQ(mf.n, 4);
  ASSERT_EQ(mf.x.size(), 2u);
  EXPECT_TRUE(mf.x[0].is_sphere);
  EXPECT_EQ(mf.x[0].dim, 5);
  EXPECT_EQ(mf.x[0].mult, 1);
  EXPECT_FALSE(mf.x[1].is_sphere);
  EXPECT_EQ(mf.x[1].order, 8);
  EXPECT_EQ(mf.x[1].mult, 2);
  // x may be omitted entirely.
  EXPECT_TRUE(parse(R"({"type": "attachment", "m": 3, "n": 4})").x.empty());
}

TEST(ManifestParse, RejectsMalformedDocuments) {
  EXPECT_THROW(parse("not json at all"), ParseError);
  try {
    parse("{\"type\":");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("not valid JSON"), std::string::npos);
  }
  expect_bad_spec("[1, 2]", "must be a JSON object");
  expect_bad_spec(R"({"n": 3, "d": 2})", "missing field \"type\"");
  expect_bad_spec(R"({"type": "mystery", "n": 3})", "\"type\" must be one of");
  expect_bad_spec(R"({"type": 7})", "\"type\" must be one of");
}

TEST(ManifestParse, RejectsUnknownAndMistypedFields) {
  expect_bad_spec(R"({"type": "pd-even", "n": 3, "d": 2, "bogus": 1})",
                  "unknown field \"bogus\"");
  expect_bad_spec(R"({"type": "pd-even", "n": 3, "d": 2, "torsion": []})",
                  "unknown field \"torsion\"");
  expect_bad_spec(R"({"type": "pd-even", "n": "three", "d": 2})",
                  "\"n\" must be an integer");
  expect_bad_spec(R"({"type": "pd-even", "n": 3, "d": 2.5})",
                  "\"d\" must be an integer");
  expect_bad_spec(R"({"type": "pd-odd", "n": 2, "d": 1, "torsion": 5})",
                  "\"torsion\" must be an array");
  expect_bad_spec(R"({"type": "pd-odd", "n": 2, "d": 1, "torsion": [3]})",
                  "entries must be objects");
  expect_bad_spec(R"({"type": "pd-odd", "n": 2, "d": 1,
                      "torsion": [{"p": 2, "r": 1, "weird": 0}]})",
                  "unknown field \"torsion[0].weird\"");
  expect_bad_spec(R"({"type": "attachment", "m": 3, "n": 4,
                      "x": [{"kind": "torus", "dim": 5}]})",
                  "\"sphere\" or \"moore\"");
  expect_bad_spec(R"({"type": "attachment", "m": 3, "n": 4,
                      "x": [{"kind": "sphere", "dim": 5, "order": 3}]})",
                  "unknown field \"x[0].order\"");
}

TEST(ManifestParse, RangeViolationsNameTheBounds) {
  expect_bad_spec(R"({"type": "pd-even", "n": 1, "d": 2})",
                  "\"n\" must lie in [2, 64], got 1");
  expect_bad_spec(R"({"type": "pd-even", "n": 65, "d": 2})",
                  "must lie in [2, 64], got 65");
  expect_bad_spec(R"({"type": "pd-odd", "n": 64, "d": 1})",
                  "must lie in [2, 63]");
  expect_bad_spec(R"({"type": "pd-even", "n": 3, "d": -1})",
                  "\"d\" must lie in [0, 1000000]");
  expect_bad_spec(R"({"type": "pd-odd", "n": 2, "d": 1,
                      "torsion": [{"p": 1, "r": 1}]})",
                  "\"torsion[0].p\" must lie in [2, 1000000]");
  expect_bad_spec(R"({"type": "pd-odd", "n": 2, "d": 1,
                      "torsion": [{"p": 2, "r": 63}]})",
                  "\"torsion[0].r\" must lie in [1, 62]");
  expect_bad_spec(R"({"type": "pd-odd", "n": 2, "d": 1,
                      "torsion": [{"p": 3, "r": 13}]})",
                  "exceeds 1000000");
  expect_bad_spec(R"({"type": "pd-odd", "n": 2, "d": 1,
                      "torsion": [{"p": 2, "r": 1, "mult": 0}]})",
                  "\"torsion[0].mult\" must lie in [1, 1000000]");
  expect_bad_spec(R"({"type": "attachment", "m": 3, "n": 4,
                      "x": [{"kind": "sphere", "dim": 1}]})",
                  "\"x[0].dim\" must lie in [2, 129]");
  expect_bad_spec(R"({"type": "attachment", "m": 3, "n": 4,
                      "x": [{"kind": "moore", "dim": 6, "order": 1}]})",
                  "\"x[0].order\" must lie in [2, 1000000]");
}

TEST(ManifestParse, CutoffMustCoverTheTopCell) {
  // Explicit cutoffs are validated against the spec's minimum directly.
  expect_bad_spec(R"({"type": "pd-even", "n": 3, "d": 2, "cutoff": 5})",
                  "\"cutoff\" must lie in [6, 128], got 5");
  // A default cutoff below the minimum is called out explicitly.
  expect_bad_spec(R"({"type": "attachment", "m": 15, "n": 15})",
                  "cutoff must be >= 30 for this spec (top-cell coverage)");
  EXPECT_EQ(parse(R"({"type": "attachment", "m": 15, "n": 15,
                      "cutoff": 30})").cutoff, 30);
  expect_bad_spec(R"({"type": "pd-even", "n": 3, "d": 2, "cutoff": 129})",
                  "[6, 128], got 129");
  expect_bad_spec(
      R"({"type": "pd-even", "n": 3, "d": 2, "cutoff": 12, "kmax": 13})",
      "\"kmax\" must lie in [1, 12]");
}

TEST(ManifestParse, PrimalityIsCheckedAtDecomposeTime) {
  Manifest mf = parse(R"({"type": "pd-odd", "n": 2, "d": 1,
                          "torsion": [{"p": 4, "r": 1}], "cutoff": 8})");
  EXPECT_EQ(mf.torsion[0].p, 4);  // parse accepts any in-range integer
  try {
    decompose(mf);
    FAIL() << "expected BadSpec";
  } catch (const BadSpec& e) {
    EXPECT_NE(std::string(e.what()).find("is not prime"), std::string::npos);
  }
}

TEST(ManifestParse, CanonicalEchoRoundTrips) {
  Manifest mf = parse(R"({"type": "pd-odd", "n": 2, "d": 1,
                          "torsion": [{"p": 2, "r": 3}], "cutoff": 12})");
  json echo = manifest_json(mf);
  EXPECT_EQ(echo["type"], "pd-odd");
  EXPECT_EQ(echo["cutoff"], 12);
  EXPECT_EQ(echo["kmax"], 12);  // default materialized
  EXPECT_EQ(echo["torsion"][0]["mult"], 1);
  EXPECT_EQ(manifest_json(parse_manifest(echo)), echo);

  Manifest att = parse(R"({"type": "attachment", "m": 3, "n": 4,
                           "x": [{"kind": "moore", "dim": 6, "order": 8}],
                           "cutoff": 12})");
  json att_echo = manifest_json(att);
  EXPECT_EQ(att_echo["x"][0]["order"], 8);
  EXPECT_EQ(manifest_json(parse_manifest(att_echo)), att_echo);
}

// --------------------------------------------------------------------------
// Dispatch helpers
// --------------------------------------------------------------------------

TEST(ManifestDispatch, MiddleWedgeAndOuterSpheres) {
  Manifest even = parse(R"({"type": "pd-even", "n": 3, "d": 4, "cutoff": 8})");
  EXPECT_EQ(outer_spheres(even), (std::pair<int, int>{3, 3}));
  WedgeNF w = middle_wedge(even, 8);
  EXPECT_EQ(w.multiplicity(Atom::sphere(3)), 2);  // d - 2 survive the peel

  Manifest four = parse(R"({"type": "pd-four", "d": 1, "z": {"n": 2, "d": 0},
                            "cutoff": 8})");
  EXPECT_EQ(outer_spheres(four), (std::pair<int, int>{2, 3}));
  EXPECT_TRUE(middle_wedge(four, 8).is_point());

  Manifest low = parse(R"({"type": "pd-even", "n": 3, "d": 1, "cutoff": 8})");
  EXPECT_THROW(middle_wedge(low, 8), RankTooSmall);
  EXPECT_THROW(decompose(low), RankTooSmall);
}

// --------------------------------------------------------------------------
// run(): one smoke test per subcommand
// --------------------------------------------------------------------------

const SphereTable& table() { return builtin_sphere_table(); }

TEST(Run, DecomposeReportsFactorsAndIsDeterministic) {
  Manifest mf = parse(R"({"type": "pd-even", "n": 3, "d": 2, "cutoff": 8})");
  RunResult r = run(mf, "decompose", table());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.report["subcommand"], "decompose");
  ASSERT_EQ(r.report["decomposition"]["factors"].size(), 1u);
  EXPECT_EQ(r.report["decomposition"]["factors"][0]["factor"], "Loop(S^3)");
  EXPECT_EQ(r.report["decomposition"]["factors"][0]["multiplicity"], 2);
  EXPECT_EQ(r.report["decomposition"]["complete_below"], 8);
  EXPECT_EQ(r.report.dump(), run(mf, "decompose", table()).report.dump());
}

TEST(Run, GroupsReportsByDegree) {
  Manifest mf = parse(
      R"({"type": "pd-even", "n": 3, "d": 2, "cutoff": 8, "kmax": 6})");
  RunResult r = run(mf, "groups", table());
  EXPECT_EQ(r.exit_code, 0);
  const auto& by_degree = r.report["groups"]["by_degree"];
  ASSERT_EQ(by_degree.size(), 6u);
  EXPECT_EQ(by_degree[2]["k"], 3);
  EXPECT_EQ(by_degree[2]["group"], "Z^2");
  EXPECT_EQ(by_degree[5]["group"], "(Z/3)^2 + (Z/4)^2");
}

TEST(Run, SeriesCoversTheRationalsAndTorsionPrimes) {
  Manifest mf = parse(R"({"type": "pd-odd", "n": 2, "d": 1,
                          "torsion": [{"p": 2, "r": 3}], "cutoff": 8})");
  RunResult r = run(mf, "series", table());
  ASSERT_EQ(r.report["series"].size(), 2u);
  EXPECT_EQ(r.report["series"][0]["field"], "Q");
  EXPECT_EQ(r.report["series"][1]["field"], "F_2");
  // F_2 closed form 1/(1 - 2t - 2t^2 + t^3): 1, 2, 6, 15, 40, 104, 273, 714.
  std::vector<std::int64_t> expected{1, 2, 6, 15, 40, 104, 273, 714};
  const auto& coeffs = r.report["series"][1]["coefficients"];
  ASSERT_EQ(coeffs.size(), 8u);
  for (std::size_t k = 0; k < expected.size(); ++k)
    EXPECT_EQ(coeffs[k].get<std::int64_t>(), expected[k]) << k;
}

TEST(Run, FibrationEmitsBothCertificates) {
  Manifest mf = parse(R"({"type": "attachment", "m": 3, "n": 4,
                          "x": [{"kind": "sphere", "dim": 5}],
                          "cutoff": 12})");
  RunResult r = run(mf, "fibration", table());
  EXPECT_EQ(r.report["fibrations"]["attachment"]["projection"], "q");
  EXPECT_EQ(r.report["fibrations"]["top_cell"]["projection"], "j");
  EXPECT_EQ(r.report["fibrations"]["top_cell"]["base"], "M");

  Manifest four = parse(
      R"({"type": "pd-four", "d": 1, "z": {"n": 2, "d": 1}, "cutoff": 8})");
  try {
    run(four, "fibration", table());
    FAIL() << "expected BadSpec";
  } catch (const BadSpec& e) {
    EXPECT_NE(std::string(e.what()).find("run the z complex as pd-odd"),
              std::string::npos);
  }
}

TEST(Run, CheckPassesOnTheFamilies) {
  for (const char* text :
       {R"({"type": "pd-even", "n": 3, "d": 3, "cutoff": 10})",
        R"({"type": "pd-odd", "n": 2, "d": 1,
            "torsion": [{"p": 2, "r": 3}], "cutoff": 8})",
        R"({"type": "pd-four", "d": 1, "z": {"n": 2, "d": 1}, "cutoff": 8})",
        R"({"type": "attachment", "m": 3, "n": 4,
            "x": [{"kind": "sphere", "dim": 5}], "cutoff": 10})"}) {
    RunResult r = run(parse(text), "check", table());
    EXPECT_EQ(r.exit_code, 0) << text;
    EXPECT_TRUE(r.report["ok"].get<bool>()) << text;
    EXPECT_GE(r.report["checks"].size(), 3u) << text;
  }
  // pd-four with z_d >= 1 carries the delegated Euler check, labeled Z.
  RunResult four = run(
      parse(R"({"type": "pd-four", "d": 1, "z": {"n": 2, "d": 1},
                "cutoff": 8})"),
      "check", table());
  EXPECT_EQ(four.report["checks"][0]["name"], "euler-identity");
  EXPECT_EQ(four.report["checks"][0]["subject"], "Z");
}

TEST(Run, UnknownSubcommandIsRejected) {
  Manifest mf = parse(R"({"type": "pd-even", "n": 3, "d": 2, "cutoff": 8})");
  EXPECT_THROW(run(mf, "explode", table()), BadSpec);
}

// --------------------------------------------------------------------------
// Error reports and text rendering
// --------------------------------------------------------------------------

TEST(Reports, ErrorJsonShape) {
  json e = error_json(BadSpec("broken"));
  EXPECT_EQ(e["error"]["class"], "invalid-input");
  EXPECT_EQ(e["error"]["code"], "InvalidSpec");
  EXPECT_EQ(e["error"]["message"], "broken");
  json u = error_json(UnsupportedSmash("nope"));
  EXPECT_EQ(u["error"]["class"], "unsupported");
  EXPECT_EQ(u["error"]["code"], "UnsupportedSmash");
}

TEST(Reports, TextRenderingIsReadable) {
  Manifest mf = parse(R"({"type": "pd-even", "n": 3, "d": 2, "cutoff": 8})");
  std::string text = render_text(run(mf, "decompose", table()).report);
  EXPECT_NE(text.find("subcommand: decompose"), std::string::npos);
  EXPECT_NE(text.find("Loop(S^3)  x2"), std::string::npos);

  std::string checked = render_text(run(mf, "check", table()).report);
  EXPECT_NE(checked.find("check euler-identity: ok"), std::string::npos);
  EXPECT_NE(checked.find("all checks: ok"), std::string::npos);

  std::string series_text = render_text(run(mf, "series", table()).report);
  EXPECT_NE(series_text.find("series over Q"), std::string::npos);
  EXPECT_NE(series_text.find("1 + 2*t^2 + 3*t^4 + 4*t^6"), std::string::npos);

  std::string err = render_text(error_json(BadSpec("broken")));
  EXPECT_EQ(err, "error [InvalidSpec]: broken\n");
}

}  // namespace
}  // namespace loopcalc
