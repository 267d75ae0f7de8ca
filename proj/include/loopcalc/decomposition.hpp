#ifndef LOOPCALC_DECOMPOSITION_HPP
#define LOOPCALC_DECOMPOSITION_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "loopcalc/atom.hpp"
#include "loopcalc/error.hpp"
#include "loopcalc/numeric.hpp"

namespace loopcalc {

// One indecomposable factor of a loop-space product decomposition.
struct LoopFactor {
  enum class Kind {
    circle,       // S^1 itself (already a loop space)
    loop_sphere,  // Loop(S^dim)
    loop_moore,   // Loop(P^dim(order))
    opaque,       // loops on a space we only know by name, e.g. a gauge group
  };

  Kind kind = Kind::loop_sphere;
  int dim = 0;
  std::int64_t order = 0;
  std::string label;

  static LoopFactor circle() { return {Kind::circle, 1, 0, {}}; }

  static LoopFactor loop_sphere(int m) {
    if (m < 2) throw BadDimension("Loop(S^m) factor needs m >= 2, got " +
                                  std::to_string(m));
    return {Kind::loop_sphere, m, 0, {}};
  }

  static LoopFactor loop_moore(int m, std::int64_t q) {
    Atom::moore(m, q);  // validates m >= 3, q >= 2
    return {Kind::loop_moore, m, q, {}};
  }

  static LoopFactor opaque(std::string label) {
    return {Kind::opaque, 0, 0, std::move(label)};
  }

  // Connectivity floor: the factor has no homotopy or homology below this
  // degree.  Opaque factors promise nothing beyond connectedness.
  int bottom() const {
    switch (kind) {
      case Kind::circle: return 1;
      case Kind::loop_sphere: return dim - 1;
      case Kind::loop_moore: return dim - 2;
      case Kind::opaque: return 1;
    }
    return 1;
  }

  // The space whose loops this factor is, when that space is an atom.
  Atom delooped() const {
    switch (kind) {
      case Kind::loop_sphere: return Atom::sphere(dim);
      case Kind::loop_moore: return Atom::moore(dim, order);
      default:
        throw UnsupportedNode("factor " + to_string() +
                              " is not the loops of a sphere or Moore space");
    }
  }

  // Canonical order matches wedge order: connectivity floor first.
  friend auto operator<=>(const LoopFactor& a, const LoopFactor& b) {
    return std::make_tuple(a.bottom(), a.kind, a.dim, a.order, a.label) <=>
           std::make_tuple(b.bottom(), b.kind, b.dim, b.order, b.label);
  }
  friend bool operator==(const LoopFactor&, const LoopFactor&) = default;

  std::string to_string() const {
    switch (kind) {
      case Kind::circle: return "S^1";
      case Kind::loop_sphere: return "Loop(S^" + std::to_string(dim) + ")";
      case Kind::loop_moore:
        return "Loop(P^" + std::to_string(dim) + "(" + std::to_string(order) +
               "))";
      case Kind::opaque: return label;
    }
    return "?";
  }
};

// A product of loop factors, truncated by connectivity: every factor with
// bottom() < cutoff carries its exact multiplicity, factors that are at least
// (cutoff-1)-connected were dropped.  A dropped factor F has H_i(F) = 0 for
// 0 < i < cutoff and pi_(k-1)(F) = 0 for k <= cutoff, so homology of the
// product is exact strictly below complete_below() and homotopy of the
// delooped space is exact through complete_below() inclusive.
class LoopDecomposition {
 public:
  explicit LoopDecomposition(int cutoff) : cutoff_(cutoff) {
    internal_check(cutoff >= 1, "decomposition cutoff must be >= 1");
  }

  int cutoff() const { return cutoff_; }
  int complete_below() const { return cutoff_; }

  const std::map<LoopFactor, std::int64_t>& factors() const { return factors_; }

  std::int64_t multiplicity(const LoopFactor& f) const {
    auto it = factors_.find(f);
    return it == factors_.end() ? 0 : it->second;
  }

  void add(const LoopFactor& f, std::int64_t mult = 1) {
    internal_check(mult >= 0, "factor multiplicity must be nonnegative");
    if (mult == 0 || f.bottom() >= cutoff_) return;
    auto [it, fresh] = factors_.try_emplace(f, mult);
    if (!fresh) it->second = checked_add(it->second, mult);
  }

  void merge(const LoopDecomposition& o) {
    internal_check(cutoff_ == o.cutoff_, "decomposition merge across cutoffs");
    for (auto& [f, m] : o.factors_) add(f, m);
    for (auto& w : o.warnings_) warn(w);
  }

  LoopDecomposition truncated_to(int new_cutoff) const {
    internal_check(new_cutoff <= cutoff_,
                   "cannot extend a decomposition to a larger cutoff");
    LoopDecomposition r(new_cutoff);
    for (auto& [f, m] : factors_) r.add(f, m);
    r.warnings_ = warnings_;
    return r;
  }

  void warn(std::string message) {
    for (auto& w : warnings_)
      if (w == message) return;
    warnings_.push_back(std::move(message));
  }
  const std::vector<std::string>& warnings() const { return warnings_; }

  bool operator==(const LoopDecomposition& o) const {
    return cutoff_ == o.cutoff_ && factors_ == o.factors_;
  }

  std::string to_string() const {
    if (factors_.empty()) return "*";
    std::ostringstream os;
    bool first = true;
    for (auto& [f, m] : factors_) {
      if (!first) os << " x ";
      first = false;
      os << f.to_string();
      if (m != 1) os << "^" << m;
    }
    return os.str();
  }

 private:
  std::map<LoopFactor, std::int64_t> factors_;
  std::vector<std::string> warnings_;
  int cutoff_;
};

}  // namespace loopcalc

#endif  // LOOPCALC_DECOMPOSITION_HPP
