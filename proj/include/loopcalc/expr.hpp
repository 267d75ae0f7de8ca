#ifndef LOOPCALC_EXPR_HPP
#define LOOPCALC_EXPR_HPP

#include <algorithm>
#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "loopcalc/atom.hpp"

namespace loopcalc {

// Immutable space expressions.  Commutative constructors (wedge, product,
// smash) flatten and sort their children so that structurally equal spaces
// compare equal; half-smash Q |x R is ordered (Q acts, R is smashed).
class SpaceExpr;
using SpaceExprPtr = std::shared_ptr<const SpaceExpr>;

class SpaceExpr {
 public:
  enum class Kind {
    point,
    atom,
    wedge,
    product,
    smash,
    half_smash,
    loop,
    susp,
    marker,  // an opaque named space (e.g. the total complex or a group)
  };

  Kind kind;
  Atom atom_value{};                   // kind == atom
  std::vector<SpaceExprPtr> children;  // wedge/product/smash/half_smash/loop/susp
  int susp_count = 0;                  // kind == susp
  std::string label;                   // kind == marker

  static SpaceExprPtr point() { return make(Kind::point); }

  static SpaceExprPtr atom(const Atom& a) {
    auto e = make(Kind::atom);
    e->atom_value = a;
    return e;
  }

  static SpaceExprPtr sphere(int m) { return atom(Atom::sphere(m)); }
  static SpaceExprPtr moore(int m, std::int64_t q) {
    return atom(Atom::moore(m, q));
  }

  static SpaceExprPtr marker(std::string name) {
    auto e = make(Kind::marker);
    e->label = std::move(name);
    return e;
  }

  static SpaceExprPtr wedge(std::vector<SpaceExprPtr> parts) {
    auto flat = flatten(Kind::wedge, std::move(parts));
    // X v * = X
    std::erase_if(flat, [](const SpaceExprPtr& c) { return c->kind == Kind::point; });
    if (flat.empty()) return point();
    if (flat.size() == 1) return flat.front();
    sort_children(flat);
    auto e = make(Kind::wedge);
    e->children = std::move(flat);
    return e;
  }

  static SpaceExprPtr product(std::vector<SpaceExprPtr> parts) {
    auto flat = flatten(Kind::product, std::move(parts));
    // X x * = X
    std::erase_if(flat, [](const SpaceExprPtr& c) { return c->kind == Kind::point; });
    if (flat.empty()) return point();
    if (flat.size() == 1) return flat.front();
    sort_children(flat);
    auto e = make(Kind::product);
    e->children = std::move(flat);
    return e;
  }

  static SpaceExprPtr smash(std::vector<SpaceExprPtr> parts) {
    auto flat = flatten(Kind::smash, std::move(parts));
    // X ^ * = *
    for (auto& c : flat)
      if (c->kind == Kind::point) return point();
    if (flat.empty()) return point();
    if (flat.size() == 1) return flat.front();
    sort_children(flat);
    auto e = make(Kind::smash);
    e->children = std::move(flat);
    return e;
  }

  static SpaceExprPtr half_smash(SpaceExprPtr q, SpaceExprPtr r) {
    auto e = make(Kind::half_smash);
    e->children = {std::move(q), std::move(r)};
    return e;
  }

  static SpaceExprPtr loop(SpaceExprPtr x) {
    auto e = make(Kind::loop);
    e->children = {std::move(x)};
    return e;
  }

  static SpaceExprPtr susp(SpaceExprPtr x, int k = 1) {
    if (k == 0) return x;
    internal_check(k > 0, "suspension count must be nonnegative");
    if (x->kind == Kind::susp) {
      k += x->susp_count;
      x = x->children.front();
    }
    auto e = make(Kind::susp);
    e->susp_count = k;
    e->children = {std::move(x)};
    return e;
  }

  static std::strong_ordering compare(const SpaceExpr& a, const SpaceExpr& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    switch (a.kind) {
      case Kind::point: return std::strong_ordering::equal;
      case Kind::atom: return a.atom_value <=> b.atom_value;
      case Kind::marker: return a.label <=> b.label;
      case Kind::susp:
        if (auto c = a.susp_count <=> b.susp_count; c != 0) return c;
        [[fallthrough]];
      default: {
        if (auto c = a.children.size() <=> b.children.size(); c != 0) return c;
        for (std::size_t i = 0; i < a.children.size(); ++i)
          if (auto c = compare(*a.children[i], *b.children[i]); c != 0) return c;
        return std::strong_ordering::equal;
      }
    }
  }

  friend bool operator==(const SpaceExpr& a, const SpaceExpr& b) {
    return compare(a, b) == 0;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::point: return "*";
      case Kind::atom: return atom_value.to_string();
      case Kind::marker: return label;
      case Kind::wedge: return join(" v ");
      case Kind::product: return join(" x ");
      case Kind::smash: return join(" ^ ");
      case Kind::half_smash:
        return "(" + children[0]->to_string() + " |x " +
               children[1]->to_string() + ")";
      case Kind::loop: return "Loop(" + children[0]->to_string() + ")";
      case Kind::susp: {
        std::string s = "Susp";
        if (susp_count != 1) s += "^" + std::to_string(susp_count);
        return s + "(" + children[0]->to_string() + ")";
      }
    }
    return "?";
  }

 private:
  static std::shared_ptr<SpaceExpr> make(Kind k) {
    auto e = std::make_shared<SpaceExpr>();
    e->kind = k;
    return e;
  }

  static std::vector<SpaceExprPtr> flatten(Kind k, std::vector<SpaceExprPtr> in) {
    std::vector<SpaceExprPtr> out;
    for (auto& c : in) {
      internal_check(c != nullptr, "null space expression");
      if (c->kind == k)
        out.insert(out.end(), c->children.begin(), c->children.end());
      else
        out.push_back(std::move(c));
    }
    return out;
  }

  static void sort_children(std::vector<SpaceExprPtr>& cs) {
    std::stable_sort(cs.begin(), cs.end(),
                     [](const SpaceExprPtr& a, const SpaceExprPtr& b) {
                       return compare(*a, *b) < 0;
                     });
  }

  std::string join(const char* sep) const {
    std::string s;
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i) s += sep;
      bool paren = children[i]->kind == Kind::wedge ||
                   children[i]->kind == Kind::product ||
                   children[i]->kind == Kind::smash;
      s += paren ? "(" + children[i]->to_string() + ")" : children[i]->to_string();
    }
    return s;
  }
};

}  // namespace loopcalc

#endif  // LOOPCALC_EXPR_HPP
