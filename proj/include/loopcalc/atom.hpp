#ifndef LOOPCALC_ATOM_HPP
#define LOOPCALC_ATOM_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <tuple>

#include "loopcalc/error.hpp"

namespace loopcalc {

// The irreducible wedge summands the rewriting calculus produces: spheres S^m
// and Moore spaces P^m(q) = S^(m-1) U_q e^m (bottom cell in dimension m-1).
struct Atom {
  enum class Kind { sphere, moore };

  Kind kind = Kind::sphere;
  int dim = 0;             // top cell dimension m
  std::int64_t order = 0;  // q for P^m(q); 0 for spheres

  static Atom sphere(int m) {
    if (m < 1) throw BadDimension("sphere dimension must be >= 1, got " +
                                  std::to_string(m));
    return {Kind::sphere, m, 0};
  }

  static Atom moore(int m, std::int64_t q) {
    if (m < 3)
      throw BadDimension("Moore space P^m(q) needs m >= 3 (simply connected "
                         "with cells in dimensions m-1, m), got m = " +
                         std::to_string(m));
    if (q < 2)
      throw BadSpec("Moore space order must be >= 2, got " + std::to_string(q));
    return {Kind::moore, m, q};
  }

  bool is_sphere() const { return kind == Kind::sphere; }
  bool is_moore() const { return kind == Kind::moore; }

  // Dimension of the bottom cell; an atom contributes nothing below this.
  int bottom() const { return is_sphere() ? dim : dim - 1; }

  Atom suspended(int k) const {
    internal_check(dim + k >= 1, "suspension drove dimension below 1");
    Atom a = *this;
    a.dim += k;
    if (a.is_moore() && a.dim < 3)
      throw BadDimension("desuspension drove a Moore space below P^3");
    return a;
  }

  // Canonical order: by bottom cell first, so wedges and factor lists read in
  // ascending connectivity; spheres precede Moore spaces at the same bottom.
  friend auto operator<=>(const Atom& a, const Atom& b) {
    return std::make_tuple(a.bottom(), a.kind, a.dim, a.order) <=>
           std::make_tuple(b.bottom(), b.kind, b.dim, b.order);
  }
  friend bool operator==(const Atom&, const Atom&) = default;

  std::string to_string() const {
    if (is_sphere()) return "S^" + std::to_string(dim);
    return "P^" + std::to_string(dim) + "(" + std::to_string(order) + ")";
  }
};

}  // namespace loopcalc

#endif  // LOOPCALC_ATOM_HPP
