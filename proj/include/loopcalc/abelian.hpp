#ifndef LOOPCALC_ABELIAN_HPP
#define LOOPCALC_ABELIAN_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "loopcalc/error.hpp"
#include "loopcalc/numeric.hpp"

namespace loopcalc {

// Finitely generated abelian group in primary canonical form:
// Z^rank  +  sum over prime powers q of (Z/q)^torsion[q].
// Any cyclic summand is split into prime-power pieces on entry
// (Z/12 -> Z/4 + Z/3), so structural equality is group isomorphism.
struct FGAbelianGroup {
  std::int64_t rank = 0;
  std::map<std::int64_t, std::int64_t> torsion;  // prime power -> multiplicity

  static FGAbelianGroup zero() { return {}; }

  static FGAbelianGroup free_part(std::int64_t r) {
    internal_check(r >= 0, "group rank must be nonnegative");
    FGAbelianGroup g;
    g.rank = r;
    return g;
  }

  static FGAbelianGroup cyclic(std::int64_t q) {
    internal_check(q >= 1, "cyclic order must be positive");
    FGAbelianGroup g;
    if (q == 1) return g;  // trivial
    for (auto [p, e] : factorize(q)) g.torsion[checked_pow(p, e)] += 1;
    return g;
  }

  FGAbelianGroup& operator+=(const FGAbelianGroup& o) {
    rank = checked_add(rank, o.rank);
    for (auto [q, m] : o.torsion) torsion[q] = checked_add(torsion[q], m);
    return *this;
  }

  friend FGAbelianGroup operator+(FGAbelianGroup a, const FGAbelianGroup& b) {
    a += b;
    return a;
  }

  FGAbelianGroup times(std::int64_t copies) const {
    internal_check(copies >= 0, "group multiple must be nonnegative");
    FGAbelianGroup g;
    g.rank = checked_mul(rank, copies);
    for (auto [q, m] : torsion)
      if (auto t = checked_mul(m, copies); t != 0) g.torsion[q] = t;
    return g;
  }

  bool is_zero() const { return rank == 0 && torsion.empty(); }

  friend bool operator==(const FGAbelianGroup&, const FGAbelianGroup&) = default;

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
      if (!first) os << " + ";
      first = false;
    };
    if (rank == 1) {
      sep();
      os << "Z";
    } else if (rank > 1) {
      sep();
      os << "Z^" << rank;
    }
    for (auto [q, m] : torsion) {
      sep();
      if (m == 1)
        os << "Z/" << q;
      else
        os << "(Z/" << q << ")^" << m;
    }
    return os.str();
  }
};

namespace detail {

inline std::string strip_ws(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline std::int64_t parse_positive_int(const std::string& s,
                                       const std::string& context) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(context + ": expected a positive integer, got '" + s + "'");
  try {
    std::int64_t v = std::stoll(s);
    if (v <= 0) throw std::out_of_range("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(context + ": integer out of range: '" + s + "'");
  }
}

}  // namespace detail

// Accepts the term grammar used by the sphere-table file and reports:
//   0 | Z | Z^r | Z/q | (Z/q)^e, joined with '+'.
inline FGAbelianGroup parse_group(const std::string& text) {
  std::string s = detail::strip_ws(text);
  if (s.empty()) throw ParseError("empty group expression");
  if (s == "0") return FGAbelianGroup::zero();

  FGAbelianGroup g;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto plus = s.find('+', pos);
    std::string term = detail::strip_ws(
        s.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos));
    const std::string ctx = "group term '" + term + "'";
    if (term.empty()) throw ParseError("empty term in group expression '" + s + "'");

    std::int64_t mult = 1;
    if (term.front() == '(') {
      auto close = term.find(')');
      if (close == std::string::npos || close + 1 >= term.size() ||
          term[close + 1] != '^')
        throw ParseError(ctx + ": expected (Z/q)^e");
      mult = detail::parse_positive_int(term.substr(close + 2), ctx);
      term = detail::strip_ws(term.substr(1, close - 1));
    }
    if (term == "Z") {
      g += FGAbelianGroup::free_part(mult);
    } else if (term.rfind("Z^", 0) == 0) {
      if (mult != 1) throw ParseError(ctx + ": cannot nest exponents");
      g += FGAbelianGroup::free_part(detail::parse_positive_int(term.substr(2), ctx));
    } else if (term.rfind("Z/", 0) == 0) {
      auto q = detail::parse_positive_int(term.substr(2), ctx);
      if (q < 2) throw ParseError(ctx + ": cyclic order must be >= 2");
      g += FGAbelianGroup::cyclic(q).times(mult);
    } else {
      throw ParseError(ctx + ": unrecognized group term");
    }
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return g;
}

}  // namespace loopcalc

#endif  // LOOPCALC_ABELIAN_HPP
