#ifndef LOOPCALC_REPORT_HPP
#define LOOPCALC_REPORT_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "loopcalc/groups.hpp"
#include "loopcalc/manifest.hpp"
#include "loopcalc/sphere_table.hpp"
#include "loopcalc/theorems.hpp"

namespace loopcalc {

struct RunResult {
  nlohmann::json report;
  int exit_code = 0;
};

namespace detail {

inline nlohmann::json decomposition_json(const LoopDecomposition& dec) {
  auto factors = nlohmann::json::array();
  for (auto& [f, mult] : dec.factors()) {
    nlohmann::json e{{"factor", f.to_string()}, {"multiplicity", mult}};
    switch (f.kind) {
      case LoopFactor::Kind::circle:
        e["kind"] = "circle";
        break;
      case LoopFactor::Kind::loop_sphere:
        e["kind"] = "loop-sphere";
        e["dim"] = f.dim;
        break;
      case LoopFactor::Kind::loop_moore:
        e["kind"] = "loop-moore";
        e["dim"] = f.dim;
        e["order"] = f.order;
        break;
      case LoopFactor::Kind::opaque:
        e["kind"] = "opaque";
        break;
    }
    factors.push_back(e);
  }
  return {{"complete_below", dec.complete_below()}, {"factors", factors}};
}

inline nlohmann::json wedge_json(const WedgeNF& w) {
  auto arr = nlohmann::json::array();
  for (auto& [a, mult] : w.atoms())
    arr.push_back({{"atom", a.to_string()}, {"multiplicity", mult}});
  return arr;
}

inline nlohmann::json series_json(const TruncatedSeries& s,
                                  const std::string& field_name,
                                  int exact_through) {
  auto coeffs = nlohmann::json::array();
  for (int k = 0; k <= exact_through; ++k) coeffs.push_back(s.coeff(k));
  return {{"field", field_name},
          {"exact_through", exact_through},
          {"coefficients", coeffs}};
}

inline nlohmann::json certificate_json(const FibrationCertificate& cert) {
  return {{"fiber", cert.fiber->to_string()},
          {"total", cert.total->to_string()},
          {"base", cert.base->to_string()},
          {"fiber_wedge", wedge_json(cert.fiber_wedge)},
          {"fiber_map", cert.fiber_map.to_string()},
          {"projection", cert.projection.to_string()},
          {"notes", cert.notes}};
}

// Primes whose prime fields see the torsion of this manifest's wedge.
inline std::vector<std::int64_t> torsion_primes(const Manifest& mf) {
  std::set<std::int64_t> primes;
  if (mf.type == Manifest::Type::pd_odd)
    for (auto& t : mf.torsion) primes.insert(t.p);
  if (mf.type == Manifest::Type::attachment)
    for (auto& a : mf.x)
      if (!a.is_sphere)
        for (auto& [p, e] : factorize(a.order)) {
          (void)e;
          primes.insert(p);
        }
  return {primes.begin(), primes.end()};
}

inline std::string field_name(const Field& f) {
  return f.is_rational() ? "Q" : "F_" + std::to_string(f.p);
}

inline nlohmann::json euler_check_json(const SeriesCheck& ck,
                                       const std::string& subject) {
  auto coeffs = [&](const TruncatedSeries& s) {
    auto arr = nlohmann::json::array();
    for (int k = 0; k <= ck.through; ++k) arr.push_back(s.coeff(k));
    return arr;
  };
  nlohmann::json e{{"name", "euler-identity"},
                   {"ok", ck.ok},
                   {"through", ck.through},
                   {"product", coeffs(ck.product)},
                   {"closed_form", coeffs(ck.closed_form)}};
  if (!ck.ok) e["first_mismatch"] = ck.first_mismatch;
  if (!subject.empty()) e["subject"] = subject;
  return e;
}

}  // namespace detail

inline nlohmann::json error_json(const Error& e) {
  return {{"error",
           {{"class", to_string(e.error_class())},
            {"code", e.code()},
            {"message", e.what()}}}};
}

// Execute one subcommand against a validated manifest and assemble the
// canonical report.  Theorem-hypothesis failures propagate as exceptions;
// a completed run returns exit code 0 except for `check`, which returns 1
// when an identity fails (the report then lists the failing check).
inline RunResult run(const Manifest& mf, const std::string& subcommand,
                     const SphereTable& table) {
  nlohmann::json report{{"subcommand", subcommand},
                        {"spec", manifest_json(mf)}};
  std::vector<std::string> warnings;
  int exit_code = 0;

  LoopDecomposition dec = decompose(mf);
  report["decomposition"] = detail::decomposition_json(dec);
  for (auto& w : dec.warnings()) warnings.push_back(w);

  if (subcommand == "decompose") {
    // decomposition + warnings only
  } else if (subcommand == "groups") {
    HomotopyGroups g = homotopy_groups(dec, mf.kmax, table);
    auto by_degree = nlohmann::json::array();
    for (int k = 1; k <= g.kmax; ++k)
      by_degree.push_back({{"k", k}, {"group", g.groups.at(k).to_string()}});
    auto residues = nlohmann::json::array();
    for (auto& r : g.residues)
      residues.push_back({{"degree", r.degree},
                          {"term", r.term},
                          {"multiplicity", r.multiplicity},
                          {"flagged", r.flagged}});
    auto misses = nlohmann::json::array();
    for (auto& m : g.misses)
      misses.push_back({{"degree", m.degree},
                        {"sphere_dim", m.sphere_dim},
                        {"multiplicity", m.multiplicity},
                        {"message", m.message}});
    report["groups"] = {{"kmax", g.kmax},
                        {"by_degree", by_degree},
                        {"residues", residues},
                        {"table_misses", misses}};
    for (auto& w : g.warnings) warnings.push_back(w);
  } else if (subcommand == "series") {
    auto arr = nlohmann::json::array();
    int through = mf.cutoff - 1;
    arr.push_back(detail::series_json(
        loop_series(dec, Field::rationals(), through), "Q", through));
    for (auto p : detail::torsion_primes(mf)) {
      Field f = Field::prime_field(p);
      arr.push_back(detail::series_json(loop_series(dec, f, through),
                                        detail::field_name(f), through));
    }
    report["series"] = arr;
  } else if (subcommand == "fibration") {
    if (mf.type == Manifest::Type::pd_four)
      throw BadSpec(
          "fibration certificates are emitted for pd-even, pd-odd and "
          "attachment manifests; for pd-four run the z complex as pd-odd");
    auto [m, n] = outer_spheres(mf);
    WedgeNF x = middle_wedge(mf, mf.cutoff);
    FibrationCertificate att = attachment_fibration(m, n, x, mf.cutoff);
    FibrationCertificate top = top_cell_fibration(m, n, dec, mf.cutoff);
    report["fibrations"] = {{"attachment", detail::certificate_json(att)},
                            {"top_cell", detail::certificate_json(top)}};
  } else if (subcommand == "check") {
    auto checks = nlohmann::json::array();
    bool all_ok = true;

    // Euler-form identity, where a closed form exists.
    if (mf.type == Manifest::Type::pd_even) {
      SeriesCheck ck = verify_euler_even(mf.n, mf.d, mf.cutoff);
      all_ok = all_ok && ck.ok;
      checks.push_back(detail::euler_check_json(ck, ""));
    } else if (mf.type == Manifest::Type::pd_odd) {
      SeriesCheck ck = verify_euler_odd(mf.n, mf.d, mf.torsion, mf.cutoff);
      all_ok = all_ok && ck.ok;
      checks.push_back(detail::euler_check_json(ck, ""));
    } else if (mf.type == Manifest::Type::pd_four && mf.z_d >= 1) {
      SeriesCheck ck = verify_euler_odd(2, mf.z_d, {}, mf.cutoff);
      all_ok = all_ok && ck.ok;
      checks.push_back(detail::euler_check_json(ck, "Z"));
    }

    // Power-series identity for the carrier wedge of the half-smash.
    {
      auto [m, n] = outer_spheres(mf);
      WedgeNF x = middle_wedge(mf, mf.cutoff);
      std::vector<Atom> outer{Atom::sphere(m), Atom::sphere(n)};
      WedgeNF carrier = half_smash_normalize(outer, x, mf.cutoff);
      std::vector<Field> fields{Field::rationals(), Field::prime_field(2)};
      for (auto p : detail::torsion_primes(mf))
        if (p != 2) fields.push_back(Field::prime_field(p));
      for (auto& f : fields) {
        bool ok = check_loop_series_identity(carrier, f, mf.cutoff - 1);
        all_ok = all_ok && ok;
        checks.push_back({{"name", "loop-series-identity"},
                          {"field", detail::field_name(f)},
                          {"through", mf.cutoff - 1},
                          {"ok", ok}});
      }
    }

    // Rational series recomputed from homotopy ranks must agree.
    {
      bool ok = check_rational_consistency(dec, mf.cutoff - 1);
      all_ok = all_ok && ok;
      checks.push_back({{"name", "rational-rank-consistency"},
                        {"through", mf.cutoff - 1},
                        {"ok", ok}});
    }

    report["checks"] = checks;
    report["ok"] = all_ok;
    if (!all_ok) exit_code = 1;
  } else {
    throw BadSpec("unknown subcommand \"" + subcommand + "\"");
  }

  report["warnings"] = warnings;
  return {report, exit_code};
}

// ---------------------------------------------------------------------------
// Text rendering: a pure function of the JSON report.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string coeffs_to_text(const nlohmann::json& coeffs) {
  std::string s;
  bool first = true;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    std::int64_t c = coeffs[k].get<std::int64_t>();
    if (c == 0) continue;
    std::string mag = std::to_string(c < 0 ? -c : c);
    std::string term = k == 0 ? mag
                      : (mag == "1" ? "" : mag + "*") + "t" +
                            (k == 1 ? "" : "^" + std::to_string(k));
    s += first ? (c < 0 ? "-" + term : term)
               : (c < 0 ? " - " : " + ") + term;
    first = false;
  }
  return first ? "0" : s;
}

}  // namespace detail

inline std::string render_text(const nlohmann::json& report) {
  std::string out;
  auto line = [&out](const std::string& s) { out += s + "\n"; };

  if (report.contains("error")) {
    const auto& e = report["error"];
    line("error [" + e["code"].get<std::string>() + "]: " +
         e["message"].get<std::string>());
    return out;
  }

  line("subcommand: " + report["subcommand"].get<std::string>());
  line("spec: " + report["spec"].dump());

  if (report.contains("decomposition")) {
    const auto& d = report["decomposition"];
    line("decomposition (complete below degree " +
         std::to_string(d["complete_below"].get<int>()) + "):");
    if (d["factors"].empty()) line("  (trivial)");
    for (const auto& f : d["factors"])
      line("  " + f["factor"].get<std::string>() + "  x" +
           std::to_string(f["multiplicity"].get<std::int64_t>()));
  }

  if (report.contains("groups")) {
    const auto& g = report["groups"];
    line("homotopy groups through k = " +
         std::to_string(g["kmax"].get<int>()) + ":");
    for (const auto& e : g["by_degree"])
      line("  pi_" + std::to_string(e["k"].get<int>()) + " = " +
           e["group"].get<std::string>());
    for (const auto& r : g["residues"])
      line(std::string("  + residue ") + r["term"].get<std::string>() + " x" +
           std::to_string(r["multiplicity"].get<std::int64_t>()) +
           " in pi_" + std::to_string(r["degree"].get<int>()) +
           (r["flagged"].get<bool>() ? "  [untracked order]" : ""));
    for (const auto& m : g["table_misses"])
      line("  ! pi_" + std::to_string(m["degree"].get<int>()) +
           " incomplete: " + m["message"].get<std::string>());
  }

  if (report.contains("series"))
    for (const auto& s : report["series"])
      line("series over " + s["field"].get<std::string>() +
           " (exact through degree " +
           std::to_string(s["exact_through"].get<int>()) + "): " +
           detail::coeffs_to_text(s["coefficients"]));

  if (report.contains("fibrations"))
    for (const auto& [which, c] : report["fibrations"].items()) {
      line("fibration (" + which + "):");
      line("  fiber: " + c["fiber"].get<std::string>());
      line("  total: " + c["total"].get<std::string>());
      line("  base:  " + c["base"].get<std::string>());
      std::string w;
      for (const auto& a : c["fiber_wedge"]) {
        if (!w.empty()) w += " v ";
        std::int64_t mult = a["multiplicity"].get<std::int64_t>();
        if (mult != 1) w += std::to_string(mult) + "*";
        w += a["atom"].get<std::string>();
      }
      line("  fiber wedge: " + (w.empty() ? "*" : w));
      line("  fiber map: " + c["fiber_map"].get<std::string>());
      line("  projection: " + c["projection"].get<std::string>());
      for (const auto& n : c["notes"])
        line("  note: " + n.get<std::string>());
    }

  if (report.contains("checks")) {
    for (const auto& c : report["checks"]) {
      std::string name = c["name"].get<std::string>();
      if (c.contains("field")) name += " over " + c["field"].get<std::string>();
      if (c.contains("subject")) name += " (" + c["subject"].get<std::string>() + ")";
      std::string status = c["ok"].get<bool>() ? "ok" : "FAILED";
      if (!c["ok"].get<bool>() && c.contains("first_mismatch"))
        status += " at degree " +
                  std::to_string(c["first_mismatch"].get<int>());
      line("check " + name + ": " + status);
      if (c.contains("product") && c["ok"].get<bool>())
        line("  series: " + detail::coeffs_to_text(c["product"]));
    }
    line(std::string("all checks: ") +
         (report["ok"].get<bool>() ? "ok" : "FAILED"));
  }

  if (report.contains("warnings") && !report["warnings"].empty())
    for (const auto& w : report["warnings"])
      line("warning: " + w.get<std::string>());
  return out;
}

}  // namespace loopcalc

#endif  // LOOPCALC_REPORT_HPP
