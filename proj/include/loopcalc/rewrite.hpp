#ifndef LOOPCALC_REWRITE_HPP
#define LOOPCALC_REWRITE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loopcalc/decomposition.hpp"
#include "loopcalc/expr.hpp"
#include "loopcalc/numeric.hpp"
#include "loopcalc/wedge.hpp"

namespace loopcalc {

// ---------------------------------------------------------------------------
// Suspension splitting of loop spaces.
// ---------------------------------------------------------------------------

// James: Susp Loop S^m  ~  wedge over k >= 1 of S^(k(m-1)+1).
inline WedgeNF james_split(int m, int cutoff) {
  if (m < 2)
    throw BadDimension("james_split needs a simply connected sphere, got S^" +
                       std::to_string(m));
  WedgeNF w(cutoff);
  for (int k = 1; k * (m - 1) + 1 <= cutoff; ++k)
    w.add(Atom::sphere(k * (m - 1) + 1));
  return w;
}

namespace detail {

// Decide what a smash of two Moore-space classes does.
enum class MoorePair { split, vanish, unsupported };

inline MoorePair moore_pair_rule(std::int64_t q1, std::int64_t q2,
                                 std::string* why) {
  if (std::gcd(q1, q2) == 1) return MoorePair::vanish;
  if (q1 != q2) {
    *why = "orders " + std::to_string(q1) + " and " + std::to_string(q2) +
           " share a prime but differ; no splitting rule applies";
    return MoorePair::unsupported;
  }
  auto pp = as_prime_power(q1);
  if (!pp.valid()) {
    *why = "order " + std::to_string(q1) +
           " is not a prime power; the smash splitting is licensed only for "
           "p a prime and r != 2";
    return MoorePair::unsupported;
  }
  if (pp.r == 2) {
    *why = "order " + std::to_string(q1) + " = " + std::to_string(pp.p) +
           "^2; the smash splitting is licensed only for p a prime and r != 2";
    return MoorePair::unsupported;
  }
  return MoorePair::split;
}

}  // namespace detail

// k-fold smash power of P^m(q), as a wedge of Moore spaces.  For k >= 2 this
// uses the mod-q smash splitting P^a ^ P^b ~ P^(a+b-1) v P^(a+b), which is
// only available when q = p^r with p prime and r != 2; the k-fold iterate is
// the binomial wedge over e in [0, k-1] of C(k-1, e) copies of
// P^(k(m-1)+1+e)(q).
inline WedgeNF moore_smash_power(int m, std::int64_t q, int k, int cutoff) {
  internal_check(k >= 1, "moore_smash_power needs k >= 1");
  WedgeNF w(cutoff);
  if (k == 1) {
    w.add(Atom::moore(m, q));
    return w;
  }
  std::string why;
  switch (detail::moore_pair_rule(q, q, &why)) {
    case detail::MoorePair::vanish:
      internal_check(false, "gcd(q, q) == 1 is impossible for q >= 2");
      break;
    case detail::MoorePair::unsupported:
      throw UnsupportedSmash("P^" + std::to_string(m) + "(" +
                             std::to_string(q) + ") smash power: " + why);
    case detail::MoorePair::split: break;
  }
  for (int e = 0; e <= k - 1; ++e)
    w.add(Atom::moore(k * (m - 1) + 1 + e, q), binomial(k - 1, e));
  return w;
}

// Susp Loop P^m(q)  ~  wedge over k >= 1 of Susp (P^(m-1)(q) smash k), the
// Moore-space analogue of the James splitting.  The suspended k-th summand is
// the binomial wedge of C(k-1, e) copies of P^(k(m-2)+2+e)(q); working with
// the suspended form keeps every intermediate a valid atom even when m = 3.
inline WedgeNF susp_split_loop_moore(int m, std::int64_t q, int cutoff) {
  Atom::moore(m, q);  // validate
  WedgeNF w(cutoff);
  // The k-th summand bottoms out at k(m-2)+1; stop once that passes cutoff.
  for (int k = 1; k * (m - 2) + 1 <= cutoff; ++k) {
    if (k >= 2) {
      std::string why;
      if (detail::moore_pair_rule(q, q, &why) != detail::MoorePair::split)
        throw UnsupportedSmash("Susp(Loop(P^" + std::to_string(m) + "(" +
                               std::to_string(q) + "))) needs the smash power "
                               "P^" + std::to_string(m - 1) + "(" +
                               std::to_string(q) + ")^" + std::to_string(k) +
                               ": " + why);
    }
    for (int e = 0; e <= k - 1; ++e)
      w.add(Atom::moore(k * (m - 2) + 2 + e, q), binomial(k - 1, e));
  }
  return w;
}

// Normal form of Susp F for a single loop factor F.
inline WedgeNF susp_expansion_of_loop_factor(const LoopFactor& f, int cutoff) {
  switch (f.kind) {
    case LoopFactor::Kind::circle: {
      WedgeNF w(cutoff);
      w.add(Atom::sphere(2));
      return w;
    }
    case LoopFactor::Kind::loop_sphere: return james_split(f.dim, cutoff);
    case LoopFactor::Kind::loop_moore:
      return susp_split_loop_moore(f.dim, f.order, cutoff);
    case LoopFactor::Kind::opaque:
      throw UnsupportedNode("cannot expand Susp(" + f.to_string() +
                            "): the factor has no atomic description");
  }
  throw UnsupportedNode("unknown loop factor kind");
}

// ---------------------------------------------------------------------------
// Smash products of atoms.
// ---------------------------------------------------------------------------

inline WedgeNF smash_atoms(const Atom& a, const Atom& b, int cutoff) {
  WedgeNF w(cutoff);
  if (a.is_sphere() && b.is_sphere()) {
    w.add(Atom::sphere(a.dim + b.dim));
    return w;
  }
  if (a.is_sphere() || b.is_sphere()) {
    const Atom& s = a.is_sphere() ? a : b;
    const Atom& p = a.is_sphere() ? b : a;
    w.add(Atom::moore(s.dim + p.dim, p.order));
    return w;
  }
  std::string why;
  switch (detail::moore_pair_rule(a.order, b.order, &why)) {
    case detail::MoorePair::vanish: return w;  // a point
    case detail::MoorePair::unsupported:
      throw UnsupportedSmash(a.to_string() + " ^ " + b.to_string() + ": " + why);
    case detail::MoorePair::split:
      w.add(Atom::moore(a.dim + b.dim - 1, a.order));
      w.add(Atom::moore(a.dim + b.dim, a.order));
      return w;
  }
  throw UnsupportedSmash(a.to_string() + " ^ " + b.to_string());
}

// One desuspension of a smash of atoms.  Every rule below is smash_atoms with
// all top dimensions lowered by one; inputs with bottom cells in dimension
// >= 2 keep every output a valid atom.  This is how a summand
// Susp(A ^ B) is computed from the normal forms of Susp A and Susp B without
// ever materializing a desuspended atom.
inline WedgeNF smash_desusp1(const Atom& a, const Atom& b, int cutoff) {
  WedgeNF w(cutoff);
  internal_check(a.bottom() >= 2 && b.bottom() >= 2,
                 "smash_desusp1 needs simply connected atoms");
  if (a.is_sphere() && b.is_sphere()) {
    w.add(Atom::sphere(a.dim + b.dim - 1));
    return w;
  }
  if (a.is_sphere() || b.is_sphere()) {
    const Atom& s = a.is_sphere() ? a : b;
    const Atom& p = a.is_sphere() ? b : a;
    w.add(Atom::moore(s.dim + p.dim - 1, p.order));
    return w;
  }
  std::string why;
  switch (detail::moore_pair_rule(a.order, b.order, &why)) {
    case detail::MoorePair::vanish: return w;
    case detail::MoorePair::unsupported:
      throw UnsupportedSmash(a.to_string() + " ^ " + b.to_string() + ": " + why);
    case detail::MoorePair::split:
      w.add(Atom::moore(a.dim + b.dim - 2, a.order));
      w.add(Atom::moore(a.dim + b.dim - 1, a.order));
      return w;
  }
  throw UnsupportedSmash(a.to_string() + " ^ " + b.to_string());
}

namespace detail {

// Desuspended pairwise smash of two wedges: the atoms of Susp(U ^ V) given
// the atoms of Susp U and Susp V.  Pairs whose lowest possible output cell
// already exceeds the cutoff are skipped before any smash rule (and hence any
// guard) is consulted: truncation-dead summands must not raise.
inline WedgeNF convolve(const WedgeNF& u, const WedgeNF& v, int cutoff) {
  WedgeNF out(cutoff);
  for (auto& [a, ma] : u.atoms())
    for (auto& [b, mb] : v.atoms()) {
      if (a.bottom() + b.bottom() - 1 > cutoff) continue;
      out.merge(smash_desusp1(a, b, cutoff).scaled(checked_mul(ma, mb)));
    }
  return out;
}

// Given S_U = atoms(Susp U) and S_V = atoms(Susp V), the atoms of
// Susp(U x V) = Susp U v Susp V v Susp(U ^ V).  Associative and commutative,
// so products may be folded in any order and repeated factors handled by
// binary powering.
inline WedgeNF combine_product(const WedgeNF& su, const WedgeNF& sv, int cutoff) {
  WedgeNF out(cutoff);
  out.merge(su);
  out.merge(sv);
  out.merge(convolve(su, sv, cutoff));
  return out;
}

inline WedgeNF power_product(const WedgeNF& sf, std::int64_t n, int cutoff) {
  internal_check(n >= 1, "power_product needs n >= 1");
  std::optional<WedgeNF> acc;
  WedgeNF base = sf;
  while (n > 0) {
    if (n & 1) acc = acc ? combine_product(*acc, base, cutoff) : base;
    n >>= 1;
    if (n > 0) base = combine_product(base, base, cutoff);
  }
  return *acc;
}

// Atoms of Susp(product of the given loop factors), all at the same cutoff.
inline WedgeNF susp1_of_loop_product(
    const std::vector<std::pair<LoopFactor, std::int64_t>>& factors,
    int cutoff) {
  std::optional<WedgeNF> acc;
  for (auto& [f, mult] : factors) {
    if (mult == 0) continue;
    WedgeNF sf = power_product(susp_expansion_of_loop_factor(f, cutoff), mult,
                               cutoff);
    acc = acc ? combine_product(*acc, sf, cutoff) : sf;
  }
  return acc ? *acc : WedgeNF::point(cutoff);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suspensions of products of loop spaces, and half-smashes against them.
// ---------------------------------------------------------------------------

// Normal form of Susp^k (Loop A_1 x ... x Loop A_n) for atoms A_i.  The empty
// product is a point, and so is its suspension.
inline WedgeNF susp_of_product(const std::vector<Atom>& loop_atoms, int k,
                               int cutoff) {
  if (k < 1) throw BadSpec("susp_of_product needs k >= 1");
  if (cutoff - (k - 1) < 0) return WedgeNF::point(cutoff);
  std::vector<std::pair<LoopFactor, std::int64_t>> factors;
  for (auto& a : loop_atoms)
    factors.emplace_back(a.is_sphere() ? LoopFactor::loop_sphere(a.dim)
                                       : LoopFactor::loop_moore(a.dim, a.order),
                         1);
  return detail::susp1_of_loop_product(factors, cutoff - (k - 1))
      .suspended(k - 1);
}

// Same rewriting for a whole loop-space decomposition (multiplicities may be
// large; the product fold uses binary powering, so only O(log mult) merges).
inline WedgeNF susp_of_loop_decomposition(const LoopDecomposition& dec, int k,
                                          int cutoff) {
  if (k < 1) throw BadSpec("susp_of_loop_decomposition needs k >= 1");
  if (cutoff - (k - 1) < 0) return WedgeNF::point(cutoff);
  std::vector<std::pair<LoopFactor, std::int64_t>> factors(
      dec.factors().begin(), dec.factors().end());
  return detail::susp1_of_loop_product(factors, cutoff - (k - 1))
      .suspended(k - 1);
}

// Q |x R  ~  R v (Q ^ R) for R a suspension: with S = atoms(Susp Q), the
// smash part is the desuspended convolution of S against R.
inline WedgeNF half_smash_normalize(const std::vector<Atom>& loop_atoms,
                                    const WedgeNF& r, int cutoff) {
  internal_check(r.cutoff() >= cutoff, "half_smash: R truncated too low");
  WedgeNF out(cutoff);
  if (r.is_point()) return out;  // Q |x * = *
  WedgeNF rr = r.cutoff() == cutoff ? r : r.truncated_to(cutoff);
  out.merge(rr);
  std::vector<std::pair<LoopFactor, std::int64_t>> factors;
  for (auto& a : loop_atoms)
    factors.emplace_back(a.is_sphere() ? LoopFactor::loop_sphere(a.dim)
                                       : LoopFactor::loop_moore(a.dim, a.order),
                         1);
  out.merge(detail::convolve(detail::susp1_of_loop_product(factors, cutoff), rr,
                             cutoff));
  return out;
}

inline WedgeNF half_smash_normalize(const LoopDecomposition& q,
                                    const WedgeNF& r, int cutoff) {
  internal_check(r.cutoff() >= cutoff, "half_smash: R truncated too low");
  WedgeNF out(cutoff);
  if (r.is_point()) return out;
  WedgeNF rr = r.cutoff() == cutoff ? r : r.truncated_to(cutoff);
  out.merge(rr);
  std::vector<std::pair<LoopFactor, std::int64_t>> factors(
      q.factors().begin(), q.factors().end());
  out.merge(detail::convolve(detail::susp1_of_loop_product(factors, cutoff), rr,
                             cutoff));
  return out;
}

// ---------------------------------------------------------------------------
// General expression normalization.
// ---------------------------------------------------------------------------

namespace detail {

// A product of loop spaces on atoms (possibly empty, possibly a single loop).
inline std::vector<Atom> as_loop_product(const SpaceExprPtr& e) {
  std::vector<Atom> atoms;
  auto take = [&](const SpaceExprPtr& c) {
    if (c->kind != SpaceExpr::Kind::loop ||
        c->children.front()->kind != SpaceExpr::Kind::atom)
      throw UnsupportedNode("expected loops on a sphere or Moore space, got " +
                            c->to_string());
    atoms.push_back(c->children.front()->atom_value);
  };
  if (e->kind == SpaceExpr::Kind::point) return atoms;
  if (e->kind == SpaceExpr::Kind::product)
    for (auto& c : e->children) take(c);
  else
    take(e);
  return atoms;
}

}  // namespace detail

// Rewrite a space expression into wedge normal form.  Handles points, atoms,
// wedges, smashes of the above, half-smashes of loop products against
// normalizable spaces, and suspensions of all of these (including suspensions
// of loop products, via the James-type splittings).  Bare loop spaces,
// markers, and products that are not under a suspension have no wedge normal
// form and raise UnsupportedNode.
inline WedgeNF normalize(const SpaceExprPtr& e, int cutoff) {
  internal_check(e != nullptr, "normalize: null expression");
  switch (e->kind) {
    case SpaceExpr::Kind::point: return WedgeNF::point(cutoff);
    case SpaceExpr::Kind::atom: {
      WedgeNF w(cutoff);
      w.add(e->atom_value);
      return w;
    }
    case SpaceExpr::Kind::wedge: {
      WedgeNF w(cutoff);
      for (auto& c : e->children) w.merge(normalize(c, cutoff));
      return w;
    }
    case SpaceExpr::Kind::smash: {
      std::optional<WedgeNF> acc;
      for (auto& c : e->children) {
        WedgeNF part = normalize(c, cutoff);
        if (!acc) {
          acc = part;
          continue;
        }
        WedgeNF next(cutoff);
        for (auto& [a, ma] : acc->atoms())
          for (auto& [b, mb] : part.atoms()) {
            if (a.bottom() + b.bottom() > cutoff) continue;
            next.merge(smash_atoms(a, b, cutoff).scaled(checked_mul(ma, mb)));
          }
        acc = next;
      }
      return acc ? *acc : WedgeNF::point(cutoff);
    }
    case SpaceExpr::Kind::half_smash:
      return half_smash_normalize(detail::as_loop_product(e->children[0]),
                                  normalize(e->children[1], cutoff), cutoff);
    case SpaceExpr::Kind::susp: {
      const auto& inner = e->children.front();
      int k = e->susp_count;
      if (inner->kind == SpaceExpr::Kind::product ||
          inner->kind == SpaceExpr::Kind::loop)
        return susp_of_product(detail::as_loop_product(inner), k, cutoff);
      if (cutoff - k < 0) return WedgeNF::point(cutoff);
      return normalize(inner, cutoff - k).suspended(k);
    }
    case SpaceExpr::Kind::loop:
      throw UnsupportedNode("a bare loop space has no wedge normal form: " +
                            e->to_string());
    case SpaceExpr::Kind::product:
      throw UnsupportedNode(
          "a product has no wedge normal form outside a suspension: " +
          e->to_string());
    case SpaceExpr::Kind::marker:
      throw UnsupportedNode("opaque space: " + e->to_string());
  }
  throw UnsupportedNode("unknown expression kind");
}

}  // namespace loopcalc

#endif  // LOOPCALC_REWRITE_HPP
