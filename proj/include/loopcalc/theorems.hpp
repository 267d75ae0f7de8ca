#ifndef LOOPCALC_THEOREMS_HPP
#define LOOPCALC_THEOREMS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loopcalc/decomposition.hpp"
#include "loopcalc/expr.hpp"
#include "loopcalc/groups.hpp"
#include "loopcalc/hilton.hpp"
#include "loopcalc/rewrite.hpp"
#include "loopcalc/series.hpp"
#include "loopcalc/wedge.hpp"

namespace loopcalc {

// ---------------------------------------------------------------------------
// Map expressions: just enough syntax to state certificates and to recognize
// when a composite factors through the top-cell pinch.
// ---------------------------------------------------------------------------

struct MapExpr {
  enum class Kind {
    identity,
    inclusion,
    pinch,       // collapse onto the top cell
    evaluation,  // ev: Susp Loop Z -> Z
    susp_of,
    loop_of,
    whitehead,  // [a, b]
    sum,        // wedge-sum of maps into a common codomain
    compose,    // parts[0] o parts[1] o ... (rightmost applied first)
    given,      // a map supplied by hypothesis, known only by name
  };

  Kind kind = Kind::identity;
  std::string label;
  std::vector<MapExpr> parts;

  static MapExpr identity() { return {Kind::identity, {}, {}}; }
  static MapExpr inclusion() { return {Kind::inclusion, {}, {}}; }
  static MapExpr pinch() { return {Kind::pinch, {}, {}}; }
  static MapExpr evaluation() { return {Kind::evaluation, {}, {}}; }
  static MapExpr given(std::string name) {
    return {Kind::given, std::move(name), {}};
  }
  static MapExpr susp_of(MapExpr f) {
    return {Kind::susp_of, {}, {std::move(f)}};
  }
  static MapExpr loop_of(MapExpr f) {
    return {Kind::loop_of, {}, {std::move(f)}};
  }
  static MapExpr whitehead(MapExpr a, MapExpr b) {
    return {Kind::whitehead, {}, {std::move(a), std::move(b)}};
  }
  static MapExpr sum(std::vector<MapExpr> fs) {
    if (fs.empty()) throw BadSpec("sum of maps needs at least one summand");
    if (fs.size() == 1) return fs.front();
    return {Kind::sum, {}, std::move(fs)};
  }
  // Outermost first: compose({a, b}) is "a after b".
  static MapExpr compose(std::vector<MapExpr> fs) {
    if (fs.empty()) throw BadSpec("compose needs at least one map");
    if (fs.size() == 1) return fs.front();
    return {Kind::compose, {}, std::move(fs)};
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::identity: return "id";
      case Kind::inclusion: return "incl";
      case Kind::pinch: return "pinch";
      case Kind::evaluation: return "ev";
      case Kind::given: return label;
      case Kind::susp_of: return "Susp(" + parts[0].to_string() + ")";
      case Kind::loop_of: return "Loop(" + parts[0].to_string() + ")";
      case Kind::whitehead:
        return "[" + parts[0].to_string() + ", " + parts[1].to_string() + "]";
      case Kind::sum: {
        std::string s;
        for (std::size_t i = 0; i < parts.size(); ++i)
          s += (i ? " + " : "") + parts[i].to_string();
        return s;
      }
      case Kind::compose: {
        std::string s;
        for (std::size_t i = 0; i < parts.size(); ++i)
          s += (i ? " o " : "") + parts[i].to_string();
        return s;
      }
    }
    return "?";
  }
};

enum class LoopNullVerdict { null_after_looping, no_conclusion };

// A map that factors through the pinch onto the top cell of a Poincare
// Duality complex becomes null homotopic after looping (the pinch map loops
// trivially once the lower skeleton's loops retract off).  Recognized purely
// syntactically: the first map applied in a composite must be the pinch.
inline LoopNullVerdict loop_null_verdict(const MapExpr& f) {
  if (f.kind == MapExpr::Kind::pinch) return LoopNullVerdict::null_after_looping;
  if (f.kind == MapExpr::Kind::compose &&
      f.parts.back().kind == MapExpr::Kind::pinch)
    return LoopNullVerdict::null_after_looping;
  return LoopNullVerdict::no_conclusion;
}

// ---------------------------------------------------------------------------
// Decompositions.
// ---------------------------------------------------------------------------

struct TorsionSummand {
  std::int64_t p = 0;
  int r = 0;
  std::int64_t mult = 1;

  std::int64_t order() const { return checked_pow(p, r); }
};

inline void validate_torsion(const std::vector<TorsionSummand>& torsion) {
  for (auto& t : torsion) {
    auto pp = as_prime_power(t.p);
    if (!pp.valid() || pp.r != 1)
      throw BadSpec("torsion summand: " + std::to_string(t.p) +
                    " is not prime");
    if (t.r < 1) throw BadSpec("torsion summand: exponent must be >= 1");
    if (t.mult < 1)
      throw BadSpec("torsion summand: multiplicity must be >= 1");
  }
}

namespace detail {

inline LoopDecomposition two_stage_decomposition(int m, int n,
                                                 const WedgeNF& sigma_x,
                                                 int cutoff) {
  std::vector<Atom> outer{Atom::sphere(m), Atom::sphere(n)};
  LoopDecomposition dec(cutoff);
  dec.add(LoopFactor::loop_sphere(m));
  dec.add(LoopFactor::loop_sphere(n));
  WedgeNF carrier = half_smash_normalize(outer, sigma_x, cutoff);
  dec.merge(loop_wedge_decompose(carrier, cutoff));
  return dec;
}

}  // namespace detail

// The middle wedge peeled off an (n-1)-connected 2n-dimensional complex with
// middle rank d: two sphere classes become the retractile S^n v S^n, the
// remaining d-2 stay in the wedge the half-smash is built on.
inline WedgeNF middle_wedge_even(int n, std::int64_t d, int cutoff) {
  WedgeNF w(cutoff);
  w.add(Atom::sphere(n), d - 2);
  return w;
}

inline WedgeNF middle_wedge_odd(int n, std::int64_t d,
                                const std::vector<TorsionSummand>& torsion,
                                int cutoff) {
  WedgeNF w(cutoff);
  w.add(Atom::sphere(n), d - 1);
  w.add(Atom::sphere(n + 1), d - 1);
  for (auto& t : torsion) w.add(Atom::moore(n + 1, t.order()), t.mult);
  return w;
}

// Loops on an (n-1)-connected 2n-dimensional Poincare Duality complex whose
// middle cohomology has rank d >= 2.  For n in {2, 4, 8} an attaching map can
// carry an element of Hopf invariant one, where the splitting hypotheses
// fail, so those dimensions are refused outright.
inline LoopDecomposition decompose_pd_even(int n, std::int64_t d, int cutoff) {
  if (n < 2) throw BadDimension("decompose_pd_even: n must be >= 2");
  if (d < 2)
    throw RankTooSmall("decompose_pd_even: middle rank d must be >= 2, got " +
                       std::to_string(d));
  if (n == 2)
    throw BadSpec(
        "decompose_pd_even: n = 2 is the four-dimensional case, which splits "
        "off a circle and needs the five-dimensional complex Z supplied "
        "explicitly; use the pd-four entry point");
  if (n == 4 || n == 8)
    throw HopfGuard("decompose_pd_even: n = " + std::to_string(n) +
                    " admits an element of Hopf invariant one, which the "
                    "decomposition hypotheses exclude");
  return detail::two_stage_decomposition(n, n, middle_wedge_even(n, d, cutoff),
                                         cutoff);
}

// Loops on an (n-1)-connected (2n+1)-dimensional Poincare Duality complex
// with H^n = Z^d + T, d >= 1, T a direct sum of cyclic prime-power summands.
inline LoopDecomposition decompose_pd_odd(
    int n, std::int64_t d, const std::vector<TorsionSummand>& torsion,
    int cutoff) {
  if (n < 2) throw BadDimension("decompose_pd_odd: n must be >= 2");
  if (d < 1)
    throw RankTooSmall("decompose_pd_odd: free middle rank d must be >= 1, "
                       "got " + std::to_string(d));
  validate_torsion(torsion);
  return detail::two_stage_decomposition(
      n, n + 1, middle_wedge_odd(n, d, torsion, cutoff), cutoff);
}

// Loops on a four-dimensional-style total complex that splits off a circle:
// Loop M ~ S^1 x Loop Z with Z a simply connected five-dimensional Poincare
// Duality complex, supplied explicitly through the rank z_d of H^2(Z); when
// that rank vanishes Z is a 5-sphere.  The middle rank d of M itself does not
// enter the splitting and is accepted only for the record.
inline LoopDecomposition decompose_pd_four(std::int64_t d, std::int64_t z_d,
                                           int cutoff) {
  if (d < 0) throw BadSpec("decompose_pd_four: middle rank d must be >= 0");
  if (z_d < 0) throw BadSpec("decompose_pd_four: rank of H^2(Z) must be >= 0");
  LoopDecomposition dec(cutoff);
  dec.add(LoopFactor::circle());
  if (z_d == 0) {
    dec.add(LoopFactor::loop_sphere(5));
    return dec;
  }
  dec.merge(decompose_pd_odd(2, z_d, {}, cutoff));
  return dec;
}

// Loops on a complex built from S^m v S^n by attaching along a wedge Susp X,
// subject to the cup-product hypothesis recorded on the certificate.
inline LoopDecomposition decompose_attachment(int m, int n, const WedgeNF& x,
                                              int cutoff) {
  if (m < 2 || n < 2)
    throw BadDimension("decompose_attachment: spheres must be simply "
                       "connected (m, n >= 2)");
  return detail::two_stage_decomposition(m, n, x, cutoff);
}

// ---------------------------------------------------------------------------
// Fibration certificates.
// ---------------------------------------------------------------------------

struct FibrationCertificate {
  SpaceExprPtr fiber, total, base;
  WedgeNF fiber_wedge;     // wedge normal form of the fiber
  MapExpr fiber_map;       // fiber -> total
  MapExpr projection;      // total -> base
  std::vector<std::string> notes;
};

// The half-smash fibration around the attachment: the fiber
// (Loop S^m x Loop S^n) |x Susp X maps into M by [ev o Susp(s), f] + f, where
// s is the right homotopy inverse of the retraction onto Loop S^m x Loop S^n
// and f is the inclusion of Susp X; collapsing to the cofiber D (which has
// the cohomology of S^m x S^n) completes the fibration.
inline FibrationCertificate attachment_fibration(int m, int n, const WedgeNF& x,
                                                 int cutoff) {
  if (m < 2 || n < 2)
    throw BadDimension("attachment_fibration: spheres must be simply "
                       "connected (m, n >= 2)");
  std::vector<Atom> outer{Atom::sphere(m), Atom::sphere(n)};
  FibrationCertificate cert{
      /*fiber=*/nullptr, /*total=*/SpaceExpr::marker("M"),
      /*base=*/SpaceExpr::marker("D"),
      /*fiber_wedge=*/half_smash_normalize(outer, x, cutoff),
      /*fiber_map=*/{}, /*projection=*/{}, /*notes=*/{}};
  std::vector<SpaceExprPtr> x_atoms;
  for (auto& [a, mult] : x.atoms())
    for (std::int64_t i = 0; i < mult; ++i) x_atoms.push_back(SpaceExpr::atom(a));
  cert.fiber = SpaceExpr::half_smash(
      SpaceExpr::product({SpaceExpr::loop(SpaceExpr::sphere(m)),
                          SpaceExpr::loop(SpaceExpr::sphere(n))}),
      SpaceExpr::wedge(std::move(x_atoms)));
  MapExpr gamma = MapExpr::compose(
      {MapExpr::evaluation(), MapExpr::susp_of(MapExpr::given("s"))});
  MapExpr f = MapExpr::given("f");
  cert.fiber_map = MapExpr::sum({MapExpr::whitehead(gamma, f), f});
  cert.projection = MapExpr::given("q");
  cert.notes = {
      "asserted: the attachment satisfies the cup-product hypothesis (the "
      "cofiber D of q has the cohomology ring of S^" + std::to_string(m) +
          " x S^" + std::to_string(n) + ")",
      "s denotes the right homotopy inverse of the looped retraction "
      "Loop M -> Loop S^" + std::to_string(m) + " x Loop S^" +
          std::to_string(n) + "; gamma = ev o Susp(s)",
      "looping the projection splits: Loop M is the product of "
      "Loop S^" + std::to_string(m) + ", Loop S^" + std::to_string(n) +
          " and loops on the fiber wedge"};
  return cert;
}

// The top-cell fibration: with Y the complement of the top cell in the
// (m+n)-dimensional complex M and j its inclusion, the fiber of j is
// Loop M |x S^(m+n-1), i.e. S^(m+n-1) v (Susp^(m+n-1) Loop M), entering M by
// [gamma, g] + g with g the attaching map of the top cell and
// gamma = ev o Susp(t) for t the right homotopy inverse of Loop j.
inline FibrationCertificate top_cell_fibration(int m, int n,
                                               const LoopDecomposition& dec,
                                               int cutoff) {
  internal_check(m >= 2 && n >= 2, "top_cell_fibration: bad dimensions");
  internal_check(cutoff <= dec.cutoff(),
                 "top_cell_fibration: decomposition truncated below cutoff");
  int top = m + n - 1;
  WedgeNF fiber(cutoff);
  fiber.add(Atom::sphere(top));
  if (top <= cutoff)
    fiber.merge(susp_of_loop_decomposition(dec, top, cutoff));
  FibrationCertificate cert{
      /*fiber=*/SpaceExpr::half_smash(SpaceExpr::loop(SpaceExpr::marker("M")),
                                      SpaceExpr::sphere(top)),
      /*total=*/SpaceExpr::marker("Y"),
      /*base=*/SpaceExpr::marker("M"),
      /*fiber_wedge=*/fiber,
      /*fiber_map=*/{}, /*projection=*/{}, /*notes=*/{}};
  MapExpr gamma = MapExpr::compose(
      {MapExpr::evaluation(), MapExpr::susp_of(MapExpr::given("t"))});
  MapExpr g = MapExpr::given("g");
  cert.fiber_map = MapExpr::sum({MapExpr::whitehead(gamma, g), g});
  cert.projection = MapExpr::given("j");
  cert.notes = {
      "Y is M with its top cell removed; j : Y -> M is the inclusion",
      "t denotes the right homotopy inverse of Loop j; gamma = ev o Susp(t)",
      "g is the attaching map S^" + std::to_string(top) + " -> Y of the top "
      "cell",
      "looping j splits: Loop Y is the product of Loop M and loops on the "
      "fiber wedge"};
  return cert;
}

// ---------------------------------------------------------------------------
// Bundles over the decomposed complex.
// ---------------------------------------------------------------------------

// Loops on the total space of a principal bundle over the decomposed complex.
// Valid only when the classifying map is declared as a composite through the
// top-cell pinch (then it is null after looping and the bundle's loops split
// as the base's loop factors times the supplied fiber factors).
inline LoopDecomposition bundle_loops(
    const LoopDecomposition& base, const std::optional<MapExpr>& classifying,
    const std::vector<LoopFactor>& fiber_factors) {
  if (!classifying)
    throw NotPinchFactored(
        "bundle_loops: no classifying map was declared; declare it as a "
        "composite whose first factor is the top-cell pinch");
  if (loop_null_verdict(*classifying) != LoopNullVerdict::null_after_looping)
    throw NotPinchFactored(
        "bundle_loops: the declared classifying map '" +
        classifying->to_string() +
        "' is not a composite through the top-cell pinch, so looping it is "
        "not known to be null");
  LoopDecomposition out = base;
  for (auto& f : fiber_factors) out.add(f);
  return out;
}

// ---------------------------------------------------------------------------
// Euler-form series checks.
// ---------------------------------------------------------------------------

struct SeriesCheck {
  bool ok = false;
  int through = 0;        // coefficients compared for degrees 0..through
  int first_mismatch = -1;  // lowest disagreeing degree, or -1 when ok
  TruncatedSeries product;
  TruncatedSeries closed_form;
};

namespace detail {

inline SeriesCheck euler_check(const LoopDecomposition& dec,
                               TruncatedSeries denominator, int through) {
  SeriesCheck out{false, through, -1,
                  loop_series(dec, Field::rationals(), through),
                  denominator.inverse()};
  out.ok = true;
  for (int k = 0; k <= through && out.ok; ++k)
    if (out.product.coeff(k) != out.closed_form.coeff(k)) {
      out.ok = false;
      out.first_mismatch = k;
    }
  return out;
}

}  // namespace detail

// Rational loop-homology identity for the even family: the series of the
// decomposition must invert 1 - d t^(n-1) + t^(2n-2).  The decomposition is
// recomputed one degree past `through`, making the top coefficient exact.
inline SeriesCheck verify_euler_even(int n, std::int64_t d, int through) {
  LoopDecomposition dec = decompose_pd_even(n, d, through + 1);
  TruncatedSeries den = TruncatedSeries::one(Field::rationals(), through);
  den.add_to(n - 1, -d);
  den.add_to(2 * n - 2, 1);
  return detail::euler_check(dec, den, through);
}

// Odd family: the series must invert 1 - d t^(n-1) - d t^n + t^(2n-1);
// torsion summands are rationally invisible and must not perturb it.
inline SeriesCheck verify_euler_odd(int n, std::int64_t d,
                                    const std::vector<TorsionSummand>& torsion,
                                    int through) {
  LoopDecomposition dec = decompose_pd_odd(n, d, torsion, through + 1);
  TruncatedSeries den = TruncatedSeries::one(Field::rationals(), through);
  den.add_to(n - 1, -d);
  den.add_to(n, -d);
  den.add_to(2 * n - 1, 1);
  return detail::euler_check(dec, den, through);
}

}  // namespace loopcalc

#endif  // LOOPCALC_THEOREMS_HPP
