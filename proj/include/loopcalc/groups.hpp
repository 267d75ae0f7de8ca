#ifndef LOOPCALC_GROUPS_HPP
#define LOOPCALC_GROUPS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "loopcalc/abelian.hpp"
#include "loopcalc/decomposition.hpp"
#include "loopcalc/hilton.hpp"
#include "loopcalc/series.hpp"
#include "loopcalc/sphere_table.hpp"
#include "loopcalc/wedge.hpp"

namespace loopcalc {

// A contribution pi_k(M) picks up from a factor whose homotopy is not
// tabulated: Moore-space groups above the bottom cell, or anything from an
// opaque factor.  Reported symbolically rather than silently dropped.
struct SymbolicResidue {
  int degree = 0;  // contributes to pi_degree of the delooped space
  std::string term;
  std::int64_t multiplicity = 0;
  bool flagged = false;  // the underlying order is p^2 or not a prime power
  friend bool operator==(const SymbolicResidue&, const SymbolicResidue&) = default;
};

// A sphere-table lookup that fell outside the tabulated range.
struct TableGap {
  int degree = 0;  // pi_degree of the delooped space
  int sphere_dim = 0;
  std::int64_t multiplicity = 0;
  std::string message;
  friend bool operator==(const TableGap&, const TableGap&) = default;
};

struct HomotopyGroups {
  int kmax = 0;
  std::map<int, FGAbelianGroup> groups;  // k -> fully resolved part, 1 <= k <= kmax
  std::vector<SymbolicResidue> residues;
  std::vector<TableGap> misses;
  std::vector<std::string> warnings;
};

// pi_k of the delooped space for k <= kmax, assembled factorwise:
// pi_k(M) = pi_(k-1)(Loop M) = direct sum of pi_(k-1) over the factors.
// Moore factors contribute their bottom group pi_(m-1)(P^m(q)) = Z/q exactly
// and symbolic residues above it; sphere factors go through the table, with
// out-of-range degrees reported as misses, never as zero.
inline HomotopyGroups homotopy_groups(const LoopDecomposition& dec, int kmax,
                                      const SphereTable& table) {
  if (kmax < 1) throw BadSpec("homotopy_groups: kmax must be >= 1");
  if (kmax > dec.complete_below())
    throw BadSpec("homotopy_groups: kmax " + std::to_string(kmax) +
                  " exceeds the decomposition's complete range (complete "
                  "below " + std::to_string(dec.complete_below()) + ")");
  HomotopyGroups out;
  out.kmax = kmax;
  out.warnings = dec.warnings();
  for (int k = 1; k <= kmax; ++k) out.groups[k] = FGAbelianGroup::zero();

  for (auto& [f, mult] : dec.factors()) {
    switch (f.kind) {
      case LoopFactor::Kind::circle:
        if (kmax >= 2) out.groups[2] += FGAbelianGroup::free_part(mult);
        break;
      case LoopFactor::Kind::loop_sphere:
        for (int k = f.dim; k <= kmax; ++k) {
          try {
            out.groups[k] += table.lookup(f.dim, k).group.times(mult);
          } catch (const TableMiss& miss) {
            out.misses.push_back({k, f.dim, mult, miss.what()});
          }
        }
        break;
      case LoopFactor::Kind::loop_moore: {
        if (f.dim - 1 <= kmax)
          out.groups[f.dim - 1] += FGAbelianGroup::cyclic(f.order).times(mult);
        auto pp = as_prime_power(f.order);
        bool flagged = !pp.valid() || pp.r == 2;
        for (int k = f.dim; k <= kmax; ++k)
          out.residues.push_back({k,
                                  "pi_" + std::to_string(k) + "(P^" +
                                      std::to_string(f.dim) + "(" +
                                      std::to_string(f.order) + "))",
                                  mult, flagged});
        if (flagged && f.dim <= kmax)
          out.warnings.push_back(
              "residues of P^" + std::to_string(f.dim) + "(" +
              std::to_string(f.order) +
              ") are untracked: the order is p^2 or not a prime power");
        break;
      }
      case LoopFactor::Kind::opaque:
        for (int k = 2; k <= kmax; ++k)
          out.residues.push_back({k,
                                  "pi_" + std::to_string(k - 1) + "(" +
                                      f.to_string() + ")",
                                  mult, false});
        break;
    }
  }
  return out;
}

// Ranks of pi_k tensor Q, k <= kmax, from the factorwise rational homotopy of
// spheres: S^m contributes rank 1 at k = m, plus rank 1 at k = 2m-1 when m is
// even; Moore factors are rationally trivial.  Independent of the sphere
// table, so it cross-checks the table-driven free parts.
inline std::map<int, std::int64_t> rational_ranks(const LoopDecomposition& dec,
                                                  int kmax) {
  if (kmax < 1) throw BadSpec("rational_ranks: kmax must be >= 1");
  if (kmax > dec.complete_below())
    throw BadSpec("rational_ranks: kmax exceeds the decomposition's complete "
                  "range");
  std::map<int, std::int64_t> ranks;
  auto bump = [&](int k, std::int64_t r) {
    if (k <= kmax && r != 0) ranks[k] = checked_add(ranks[k], r);
  };
  for (auto& [f, mult] : dec.factors()) {
    switch (f.kind) {
      case LoopFactor::Kind::circle: bump(2, mult); break;
      case LoopFactor::Kind::loop_sphere:
        bump(f.dim, mult);
        if (f.dim % 2 == 0) bump(2 * f.dim - 1, mult);
        break;
      case LoopFactor::Kind::loop_moore: break;  // rationally a point
      case LoopFactor::Kind::opaque:
        throw UnsupportedNode("rational_ranks: opaque factor " + f.to_string());
    }
  }
  return ranks;
}

namespace detail {

inline TruncatedSeries pow_series(TruncatedSeries base, std::int64_t e) {
  internal_check(e >= 0, "pow_series: negative exponent");
  TruncatedSeries acc = TruncatedSeries::one(base.field(), base.cutoff());
  while (e > 0) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return acc;
}

}  // namespace detail

// Poincare series of the loop space's homology over the given field: each
// factor Loop Susp X contributes the tensor-algebra series 1/(1 - x(t)) on
// the reduced homology of the desuspension X, and a circle contributes 1 + t.
// Coefficients are exact through degree dec.cutoff() - 1, so series_cutoff
// must stay below the decomposition cutoff.
inline TruncatedSeries loop_series(const LoopDecomposition& dec, Field field,
                                   int series_cutoff) {
  if (series_cutoff < 0) throw BadSpec("loop_series: negative cutoff");
  if (series_cutoff >= dec.cutoff())
    throw BadSpec("loop_series: coefficients above degree " +
                  std::to_string(dec.cutoff() - 1) +
                  " are not determined by this truncated decomposition");
  TruncatedSeries total = TruncatedSeries::one(field, series_cutoff);
  for (auto& [f, mult] : dec.factors()) {
    TruncatedSeries factor = TruncatedSeries::one(field, series_cutoff);
    switch (f.kind) {
      case LoopFactor::Kind::circle:
        factor.add_to(1, 1);  // H(S^1) = 1 + t
        break;
      case LoopFactor::Kind::loop_sphere:
      case LoopFactor::Kind::loop_moore: {
        WedgeNF x(series_cutoff + 2);
        x.add(f.delooped());
        TruncatedSeries letters =
            x.reduced_series(field, series_cutoff + 1).shifted_down(1)
                .truncated_to(series_cutoff);
        factor = (TruncatedSeries::one(field, series_cutoff) - letters)
                     .inverse();
        break;
      }
      case LoopFactor::Kind::opaque:
        throw UnsupportedNode("loop_series: opaque factor " + f.to_string());
    }
    total *= detail::pow_series(factor, mult);
  }
  return total;
}

// The same series reconstructed from rational homotopy ranks alone: a rank r
// at pi_k contributes (1 - t^(k-1))^(-r) for k odd and (1 + t^(k-1))^r for k
// even.  Agreement with loop_series over Q is a two-path consistency check.
inline TruncatedSeries series_from_rational_ranks(
    const std::map<int, std::int64_t>& ranks, int series_cutoff) {
  Field q = Field::rationals();
  TruncatedSeries total = TruncatedSeries::one(q, series_cutoff);
  for (auto& [k, r] : ranks) {
    internal_check(k >= 2 && r >= 0, "bad rational rank entry");
    TruncatedSeries base = TruncatedSeries::one(q, series_cutoff);
    if ((k - 1) % 2 == 0) {
      base.add_to(k - 1, -1);
      base = base.inverse();
    } else {
      base.add_to(k - 1, 1);
    }
    total *= detail::pow_series(base, r);
  }
  return total;
}

inline bool check_rational_consistency(const LoopDecomposition& dec,
                                       int through) {
  internal_check(through <= dec.cutoff() - 1,
                 "check_rational_consistency: degree out of range");
  TruncatedSeries direct = loop_series(dec, Field::rationals(), through);
  TruncatedSeries from_ranks = series_from_rational_ranks(
      rational_ranks(dec, dec.complete_below()), through);
  return direct.equal_through(from_ranks, through);
}

// Bott-Samelson form of the loop homology of a wedge: H(Loop W) is the tensor
// algebra on the desuspended reduced homology of W, with series
// 1/(1 - w(t)/t).  Exact through w.cutoff() - 1.
inline TruncatedSeries expected_loop_series_of_wedge(const WedgeNF& w,
                                                     Field field,
                                                     int series_cutoff) {
  internal_check(series_cutoff <= w.cutoff() - 1,
                 "wedge is truncated below the requested series degree");
  TruncatedSeries letters =
      w.reduced_series(field, series_cutoff + 1).shifted_down(1)
          .truncated_to(series_cutoff);
  return (TruncatedSeries::one(field, series_cutoff) - letters).inverse();
}

// Master soundness property tying the three layers together: decomposing
// Loop W into factors and multiplying their series must reproduce the
// Bott-Samelson series of W.  Checked through the given degree (inclusive).
inline bool check_loop_series_identity(const WedgeNF& w, Field field,
                                       int through) {
  internal_check(through + 1 <= w.cutoff(),
                 "check_loop_series_identity: wedge truncated too low");
  LoopDecomposition dec = loop_wedge_decompose(w, through + 1);
  TruncatedSeries lhs = loop_series(dec, field, through);
  TruncatedSeries rhs = expected_loop_series_of_wedge(w, field, through);
  return lhs.equal_through(rhs, through);
}

}  // namespace loopcalc

#endif  // LOOPCALC_GROUPS_HPP
