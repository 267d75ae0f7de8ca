#ifndef LOOPCALC_WEDGE_HPP
#define LOOPCALC_WEDGE_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "loopcalc/atom.hpp"
#include "loopcalc/series.hpp"

namespace loopcalc {

// Normal form for a truncated wedge of atoms: a multiset of spheres and Moore
// spaces.  The truncation contract is by bottom cell: every atom with
// bottom() <= cutoff appears with its exact multiplicity, every atom with
// bottom() > cutoff has been dropped.  The empty wedge is a point.
class WedgeNF {
 public:
  explicit WedgeNF(int cutoff) : cutoff_(cutoff) {
    internal_check(cutoff >= 0, "wedge cutoff must be nonnegative");
  }

  static WedgeNF point(int cutoff) { return WedgeNF(cutoff); }

  int cutoff() const { return cutoff_; }
  // Multiplicities are exact for every atom whose bottom cell lies strictly
  // below this degree.
  int complete_below() const { return cutoff_ + 1; }

  const std::map<Atom, std::int64_t>& atoms() const { return atoms_; }
  bool is_point() const { return atoms_.empty(); }

  std::int64_t multiplicity(const Atom& a) const {
    auto it = atoms_.find(a);
    return it == atoms_.end() ? 0 : it->second;
  }

  void add(const Atom& a, std::int64_t mult = 1) {
    internal_check(mult >= 0, "wedge multiplicity must be nonnegative");
    if (mult == 0 || a.bottom() > cutoff_) return;
    auto [it, fresh] = atoms_.try_emplace(a, mult);
    if (!fresh) it->second = checked_add(it->second, mult);
  }

  WedgeNF& merge(const WedgeNF& o) {
    internal_check(cutoff_ == o.cutoff_, "wedge merge across cutoffs");
    for (auto& [a, m] : o.atoms_) add(a, m);
    return *this;
  }

  WedgeNF scaled(std::int64_t k) const {
    WedgeNF r(cutoff_);
    for (auto& [a, m] : atoms_) r.add(a, checked_mul(m, k));
    return r;
  }

  WedgeNF suspended(int k) const {
    internal_check(k >= 0, "wedge suspension must be by k >= 0");
    WedgeNF r(cutoff_ + k);
    for (auto& [a, m] : atoms_) r.add(a.suspended(k), m);
    return r;
  }

  WedgeNF truncated_to(int new_cutoff) const {
    internal_check(new_cutoff <= cutoff_,
                   "cannot extend a wedge to a larger cutoff");
    WedgeNF r(new_cutoff);
    for (auto& [a, m] : atoms_) r.add(a, m);
    return r;
  }

  // Reduced homology Poincare series over the given field.  A sphere S^m
  // contributes t^m; a Moore space P^m(q) contributes t^(m-1) + t^m over F_p
  // when p divides q and nothing otherwise (its integral homology is pure
  // q-torsion).
  TruncatedSeries reduced_series(Field f, int series_cutoff) const {
    TruncatedSeries s(f, series_cutoff);
    for (auto& [a, m] : atoms_) {
      if (a.is_sphere()) {
        s.add_to(a.dim, m);
      } else if (!f.is_rational() && a.order % f.p == 0) {
        s.add_to(a.dim - 1, m);
        s.add_to(a.dim, m);
      }
    }
    return s;
  }

  friend bool operator==(const WedgeNF&, const WedgeNF&) = default;

  std::string to_string() const {
    if (is_point()) return "*";
    std::ostringstream os;
    bool first = true;
    for (auto& [a, m] : atoms_) {
      if (!first) os << " v ";
      first = false;
      if (m != 1) os << m << "*";
      os << a.to_string();
    }
    return os.str();
  }

 private:
  std::map<Atom, std::int64_t> atoms_;
  int cutoff_;
};

}  // namespace loopcalc

#endif  // LOOPCALC_WEDGE_HPP
