#ifndef LOOPCALC_MANIFEST_HPP
#define LOOPCALC_MANIFEST_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "loopcalc/error.hpp"
#include "loopcalc/theorems.hpp"

namespace loopcalc {

// One atom requested in an attachment wedge.
struct AtomSpec {
  bool is_sphere = true;
  int dim = 0;
  std::int64_t order = 0;  // Moore atoms only
  std::int64_t mult = 1;

  Atom to_atom() const {
    return is_sphere ? Atom::sphere(dim) : Atom::moore(dim, order);
  }
};

// Validated problem description.  `n`/`d`/`torsion` describe the middle
// cohomology for the pd families; attachment specs carry the two sphere
// dimensions (m, n) and the explicit wedge x; pd-four carries the rank data
// of the five-dimensional complex Z it delegates to.
struct Manifest {
  enum class Type { pd_even, pd_odd, pd_four, attachment };

  Type type = Type::pd_even;
  int n = 0;
  int m = 0;                            // attachment only
  std::int64_t d = 0;                   // middle rank (pd families)
  std::vector<TorsionSummand> torsion;  // pd-odd only
  std::vector<AtomSpec> x;              // attachment only
  std::int64_t z_d = 0;                 // pd-four only: rank of H^2(Z)
  int cutoff = 20;
  int kmax = 20;

  static std::string type_name(Type t) {
    switch (t) {
      case Type::pd_even: return "pd-even";
      case Type::pd_odd: return "pd-odd";
      case Type::pd_four: return "pd-four";
      case Type::attachment: return "attachment";
    }
    return "?";
  }
};

namespace detail {

// Resource bounds: keep every downstream computation comfortably inside
// 64-bit exact arithmetic and trial-division factorization.
inline constexpr int kMaxCutoff = 128;
inline constexpr std::int64_t kMaxScalar = 1000000;  // ranks, orders, mults

inline void reject_unknown_fields(const nlohmann::json& j,
                                  const std::set<std::string>& allowed,
                                  const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw BadSpec("unknown field \"" + path + it.key() + "\"");
}

inline const nlohmann::json& require_field(const nlohmann::json& j,
                                           const std::string& key,
                                           const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw BadSpec("missing field \"" + path + key + "\"");
  return *it;
}

inline std::int64_t as_int(const nlohmann::json& v, const std::string& path) {
  if (!v.is_number_integer())
    throw BadSpec("field \"" + path + "\" must be an integer");
  return v.get<std::int64_t>();
}

inline std::int64_t int_field(const nlohmann::json& j, const std::string& key,
                              const std::string& path, std::int64_t lo,
                              std::int64_t hi) {
  std::int64_t v = as_int(require_field(j, key, path), path + key);
  if (v < lo || v > hi)
    throw BadSpec("field \"" + path + key + "\" must lie in [" +
                  std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                  std::to_string(v));
  return v;
}

inline std::int64_t optional_int_field(const nlohmann::json& j,
                                       const std::string& key,
                                       const std::string& path,
                                       std::int64_t lo, std::int64_t hi,
                                       std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  return int_field(j, key, path, lo, hi);
}

inline std::vector<TorsionSummand> parse_torsion(const nlohmann::json& v,
                                                 const std::string& path) {
  if (!v.is_array()) throw BadSpec("field \"" + path + "\" must be an array");
  std::vector<TorsionSummand> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "].";
    const auto& e = v[i];
    if (!e.is_object()) throw BadSpec("field \"" + path + "\" entries must be objects");
    reject_unknown_fields(e, {"p", "r", "mult"}, p);
    TorsionSummand t;
    t.p = int_field(e, "p", p, 2, kMaxScalar);
    t.r = static_cast<int>(int_field(e, "r", p, 1, 62));
    t.mult = optional_int_field(e, "mult", p, 1, kMaxScalar, 1);
    // keep the cyclic order itself within the scalar bound
    std::int64_t q = 1;
    for (int k = 0; k < t.r; ++k) {
      q *= t.p;
      if (q > kMaxScalar)
        throw BadSpec("torsion order p^r at \"" + path + "[" +
                      std::to_string(i) + "]\" exceeds " +
                      std::to_string(kMaxScalar));
    }
    out.push_back(t);
  }
  return out;
}

inline std::vector<AtomSpec> parse_x(const nlohmann::json& v,
                                     const std::string& path) {
  if (!v.is_array()) throw BadSpec("field \"" + path + "\" must be an array");
  std::vector<AtomSpec> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "].";
    const auto& e = v[i];
    if (!e.is_object()) throw BadSpec("field \"" + path + "\" entries must be objects");
    const auto& kind = require_field(e, "kind", p);
    if (!kind.is_string())
      throw BadSpec("field \"" + p + "kind\" must be \"sphere\" or \"moore\"");
    AtomSpec a;
    if (kind.get<std::string>() == "sphere") {
      reject_unknown_fields(e, {"kind", "dim", "mult"}, p);
      a.is_sphere = true;
      a.dim = static_cast<int>(int_field(e, "dim", p, 2, kMaxCutoff + 1));
    } else if (kind.get<std::string>() == "moore") {
      reject_unknown_fields(e, {"kind", "dim", "order", "mult"}, p);
      a.is_sphere = false;
      a.dim = static_cast<int>(int_field(e, "dim", p, 3, kMaxCutoff + 1));
      a.order = int_field(e, "order", p, 2, kMaxScalar);
    } else {
      throw BadSpec("field \"" + p + "kind\" must be \"sphere\" or \"moore\"");
    }
    a.mult = optional_int_field(e, "mult", p, 1, kMaxScalar, 1);
    out.push_back(a);
  }
  return out;
}

}  // namespace detail

// Parse and validate a manifest.  Structural problems (unknown fields, bad
// types, out-of-range values) are rejected here; hypotheses of the theorems
// themselves (rank minimums, the Hopf-invariant-one exclusion, smash
// licensing) are enforced by the decomposition entry points so that each
// failure keeps its own error class.
inline Manifest parse_manifest(const nlohmann::json& j) {
  using detail::int_field;
  using detail::kMaxCutoff;
  using detail::kMaxScalar;
  using detail::optional_int_field;
  if (!j.is_object()) throw BadSpec("manifest must be a JSON object");
  const auto& tv = detail::require_field(j, "type", "");
  if (!tv.is_string())
    throw BadSpec("field \"type\" must be one of \"pd-even\", \"pd-odd\", "
                  "\"pd-four\", \"attachment\"");
  std::string type = tv.get<std::string>();

  Manifest mf;
  int min_cutoff = 2;
  if (type == "pd-even") {
    mf.type = Manifest::Type::pd_even;
    detail::reject_unknown_fields(j, {"type", "n", "d", "cutoff", "kmax"}, "");
    mf.n = static_cast<int>(int_field(j, "n", "", 2, kMaxCutoff / 2));
    mf.d = int_field(j, "d", "", 0, kMaxScalar);
    min_cutoff = 2 * mf.n;  // cover the top cell
  } else if (type == "pd-odd") {
    mf.type = Manifest::Type::pd_odd;
    detail::reject_unknown_fields(
        j, {"type", "n", "d", "torsion", "cutoff", "kmax"}, "");
    mf.n = static_cast<int>(int_field(j, "n", "", 2, (kMaxCutoff - 1) / 2));
    mf.d = int_field(j, "d", "", 0, kMaxScalar);
    if (j.contains("torsion")) mf.torsion = detail::parse_torsion(j.at("torsion"), "torsion");
    min_cutoff = 2 * mf.n + 1;
  } else if (type == "pd-four") {
    mf.type = Manifest::Type::pd_four;
    detail::reject_unknown_fields(j, {"type", "d", "z", "cutoff", "kmax"}, "");
    mf.d = int_field(j, "d", "", 0, kMaxScalar);
    const auto& z = detail::require_field(j, "z", "");
    if (!z.is_object()) throw BadSpec("field \"z\" must be an object");
    detail::reject_unknown_fields(z, {"n", "d", "torsion"}, "z.");
    if (int_field(z, "n", "z.", 2, 2) != 2)
      throw BadSpec("pd-four requires z.n = 2");
    mf.z_d = int_field(z, "d", "z.", 0, kMaxScalar);
    if (z.contains("torsion") && !detail::parse_torsion(z.at("torsion"), "z.torsion").empty())
      throw BadSpec("pd-four requires z to be torsion-free");
    min_cutoff = 5;  // cover the top cell of Z
  } else if (type == "attachment") {
    mf.type = Manifest::Type::attachment;
    detail::reject_unknown_fields(j, {"type", "m", "n", "x", "cutoff", "kmax"},
                                  "");
    mf.m = static_cast<int>(int_field(j, "m", "", 2, kMaxCutoff));
    mf.n = static_cast<int>(int_field(j, "n", "", 2, kMaxCutoff));
    if (j.contains("x")) mf.x = detail::parse_x(j.at("x"), "x");
    min_cutoff = mf.m + mf.n;
  } else {
    throw BadSpec("field \"type\" must be one of \"pd-even\", \"pd-odd\", "
                  "\"pd-four\", \"attachment\", got \"" + type + "\"");
  }

  mf.cutoff = static_cast<int>(
      optional_int_field(j, "cutoff", "", min_cutoff, kMaxCutoff, 20));
  if (mf.cutoff < min_cutoff)
    throw BadSpec("cutoff must be >= " + std::to_string(min_cutoff) +
                  " for this spec (top-cell coverage)");
  mf.kmax = static_cast<int>(
      optional_int_field(j, "kmax", "", 1, mf.cutoff, mf.cutoff));
  return mf;
}

inline Manifest parse_manifest_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what());
  }
  return parse_manifest(j);
}

// Canonical re-serialization of a validated manifest, defaults materialized.
inline nlohmann::json manifest_json(const Manifest& mf) {
  nlohmann::json j;
  j["type"] = Manifest::type_name(mf.type);
  j["cutoff"] = mf.cutoff;
  j["kmax"] = mf.kmax;
  switch (mf.type) {
    case Manifest::Type::pd_even:
      j["n"] = mf.n;
      j["d"] = mf.d;
      break;
    case Manifest::Type::pd_odd: {
      j["n"] = mf.n;
      j["d"] = mf.d;
      auto arr = nlohmann::json::array();
      for (auto& t : mf.torsion)
        arr.push_back({{"p", t.p}, {"r", t.r}, {"mult", t.mult}});
      j["torsion"] = arr;
      break;
    }
    case Manifest::Type::pd_four:
      j["d"] = mf.d;
      j["z"] = {{"n", 2}, {"d", mf.z_d}};
      break;
    case Manifest::Type::attachment: {
      j["m"] = mf.m;
      j["n"] = mf.n;
      auto arr = nlohmann::json::array();
      for (auto& a : mf.x) {
        nlohmann::json e{{"kind", a.is_sphere ? "sphere" : "moore"},
                         {"dim", a.dim},
                         {"mult", a.mult}};
        if (!a.is_sphere) e["order"] = a.order;
        arr.push_back(e);
      }
      j["x"] = arr;
      break;
    }
  }
  return j;
}

// The wedge the half-smash carrier is built over (the spec's Susp X).
inline WedgeNF middle_wedge(const Manifest& mf, int cutoff) {
  switch (mf.type) {
    case Manifest::Type::pd_even:
      if (mf.d < 2)
        throw RankTooSmall("pd-even requires d >= 2, got " +
                           std::to_string(mf.d));
      return middle_wedge_even(mf.n, mf.d, cutoff);
    case Manifest::Type::pd_odd:
      if (mf.d < 1)
        throw RankTooSmall("pd-odd requires d >= 1, got " +
                           std::to_string(mf.d));
      return middle_wedge_odd(mf.n, mf.d, mf.torsion, cutoff);
    case Manifest::Type::pd_four:
      if (mf.z_d < 1) return WedgeNF::point(cutoff);  // Z is a 5-sphere
      return middle_wedge_odd(2, mf.z_d, {}, cutoff);
    case Manifest::Type::attachment: {
      WedgeNF w(cutoff);
      for (auto& a : mf.x) w.add(a.to_atom(), a.mult);
      return w;
    }
  }
  throw UnsupportedNode("middle_wedge: unhandled manifest type");
}

// The two sphere dimensions the decomposition retracts onto; pd-four reports
// the pair for its delegate Z.
inline std::pair<int, int> outer_spheres(const Manifest& mf) {
  switch (mf.type) {
    case Manifest::Type::pd_even: return {mf.n, mf.n};
    case Manifest::Type::pd_odd: return {mf.n, mf.n + 1};
    case Manifest::Type::pd_four: return {2, 3};
    case Manifest::Type::attachment: return {mf.m, mf.n};
  }
  throw UnsupportedNode("outer_spheres: unhandled manifest type");
}

// Dispatch to the decomposition entry point for this manifest.
inline LoopDecomposition decompose(const Manifest& mf, int cutoff) {
  switch (mf.type) {
    case Manifest::Type::pd_even:
      return decompose_pd_even(mf.n, mf.d, cutoff);
    case Manifest::Type::pd_odd:
      return decompose_pd_odd(mf.n, mf.d, mf.torsion, cutoff);
    case Manifest::Type::pd_four:
      return decompose_pd_four(mf.d, mf.z_d, cutoff);
    case Manifest::Type::attachment: {
      WedgeNF x(cutoff);
      for (auto& a : mf.x) x.add(a.to_atom(), a.mult);
      return decompose_attachment(mf.m, mf.n, x, cutoff);
    }
  }
  throw UnsupportedNode("decompose: unhandled manifest type");
}

inline LoopDecomposition decompose(const Manifest& mf) {
  return decompose(mf, mf.cutoff);
}

}  // namespace loopcalc

#endif  // LOOPCALC_MANIFEST_HPP
