#ifndef LOOPCALC_HILTON_HPP
#define LOOPCALC_HILTON_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "loopcalc/decomposition.hpp"
#include "loopcalc/lyndon.hpp"
#include "loopcalc/numeric.hpp"
#include "loopcalc/rewrite.hpp"
#include "loopcalc/wedge.hpp"

namespace loopcalc {

namespace detail {

// Hilton-Milnor: Loop(v_i Susp X_i) ~ product over Lyndon words w in the X_i
// of Loop Susp (smash of the letters of w).  Atoms are suspensions (S^m =
// Susp S^(m-1), P^m(q) = Susp P^(m-1)(q)), so a word's letter weights are
// bottom-cell degrees and the factor type depends only on the word's total
// weight D and its number j of Moore letters:
//   j = 0:  Loop S^(D+1)
//   j = 1:  Loop P^(D+2)(q)
//   j >= 2: loops on the binomial wedge of C(j-1,e) copies of P^(D+2+e)(q),
//           e in [0, j-1] -- valid only when q = p^r, r != 2, and itself
//           decomposed by re-entering the same splitting.
// Multiplicities come from graded Witt counts, never from enumerating words.
class HiltonMilnor {
 public:
  using PowerMemo =
      std::map<std::pair<std::int64_t, std::pair<int, int>>, LoopDecomposition>;

  HiltonMilnor(const WedgeNF& w, int cutoff, PowerMemo* memo = nullptr)
      : cutoff_(cutoff), memo_(memo), dec_(cutoff) {
    if (memo_ == nullptr) {
      own_memo_ = std::make_unique<PowerMemo>();
      memo_ = own_memo_.get();
    }
    internal_check(cutoff >= 1, "loop_wedge_decompose: cutoff must be >= 1");
    internal_check(
        w.cutoff() >= cutoff,
        "loop_wedge_decompose: wedge is truncated below the requested cutoff");
    for (auto& [a, m] : w.atoms()) {
      if (a.bottom() > cutoff_) continue;  // cannot reach a surviving factor
      if (a.is_sphere()) {
        if (a.dim < 2)
          throw BadDimension(
              "loop_wedge_decompose needs a simply connected wedge; got " +
              a.to_string());
        bump(sphere_letters_, a.dim - 1, m);
      } else {
        bump(moore_letters_[a.order], a.dim - 2, m);
      }
      total_letters_ = checked_add(total_letters_, m);
    }
  }

  LoopDecomposition run() {
    check_cross_class_smashes();
    count_sphere_words();
    for (auto& [q, letters] : moore_letters_) count_moore_words(q, letters);
    return std::move(dec_);
  }

 private:
  static void bump(std::vector<std::int64_t>& v, int weight, std::int64_t m) {
    if (static_cast<int>(v.size()) <= weight) v.resize(weight + 1, 0);
    v[static_cast<std::size_t>(weight)] = checked_add(v[weight], m);
  }

  static int min_weight(const std::vector<std::int64_t>& v) {
    for (int d = 0; d < static_cast<int>(v.size()); ++d)
      if (v[static_cast<std::size_t>(d)] != 0) return d;
    return -1;
  }

  // A word mixing Moore letters of two different orders smashes their Moore
  // spaces together.  Coprime orders smash to a point (the word contributes
  // nothing); orders sharing a prime have no splitting rule, which only
  // matters if the lightest such word produces a factor below the cutoff.
  void check_cross_class_smashes() const {
    for (auto it1 = moore_letters_.begin(); it1 != moore_letters_.end(); ++it1)
      for (auto it2 = std::next(it1); it2 != moore_letters_.end(); ++it2) {
        if (std::gcd(it1->first, it2->first) == 1) continue;
        int b1 = min_weight(it1->second), b2 = min_weight(it2->second);
        if (b1 < 0 || b2 < 0) continue;
        if (b1 + b2 < cutoff_)
          throw UnsupportedSmash(
              "the wedge mixes Moore spaces of orders " +
              std::to_string(it1->first) + " and " + std::to_string(it2->first) +
              ", which share a prime but are not equal; their smash (first "
              "needed in degree " + std::to_string(b1 + b2) +
              ") has no splitting rule");
      }
  }

  void count_sphere_words() {
    if (min_weight(sphere_letters_) < 0) return;
    GradedWittCounter counter(sphere_letters_, {}, cutoff_ - 1, 0);
    for (int d = 1; d <= cutoff_ - 1; ++d)
      dec_.add(LoopFactor::loop_sphere(d + 1), counter.count(0, d));
  }

  void count_moore_words(std::int64_t q, const std::vector<std::int64_t>& u) {
    int minb = min_weight(u);
    if (minb < 0) return;
    int jmax = (cutoff_ - 1) / minb;
    GradedWittCounter counter(sphere_letters_, u, cutoff_ - 1, jmax);

    for (int d = 1; d <= cutoff_ - 1; ++d)
      dec_.add(LoopFactor::loop_moore(d + 2, q), counter.count(1, d));

    std::string why;
    bool licensed = moore_pair_rule(q, q, &why) == MoorePair::split;
    bool any_possible = total_letters_ >= 2;  // some word repeats a Moore letter
    for (int j = 2; j <= jmax; ++j)
      // Loops on the (j, d) wedge bottom out in degree d, so only
      // d <= cutoff-1 contributes; heavier words are truncation-dead and
      // must not raise.
      for (int d = j * minb; d <= cutoff_ - 1; ++d) {
        std::int64_t count = counter.count(j, d);
        if (count == 0) continue;
        if (!licensed)
          throw UnsupportedSmash(
              "decomposing this wedge needs the smash power P(" +
              std::to_string(q) + ")^" + std::to_string(j) + " in degree " +
              std::to_string(d + 2) + ": " + why);
        add_moore_power_factors(q, j, d, count);
      }
    if (!licensed && any_possible)
      dec_.warn("Moore spaces of order " + std::to_string(q) +
                " admit no smash splitting (" + why +
                "); all words needing one lie above the cutoff, so this "
                "truncated decomposition is unaffected");
  }

  // Loops on the binomial wedge for (j, d), taken L times.  The wedge is
  // decomposed by re-entering Hilton-Milnor; results are memoized per (q,j,d)
  // since the wedge depends on nothing else.
  void add_moore_power_factors(std::int64_t q, int j, int d, std::int64_t L) {
    auto key = std::make_pair(q, std::make_pair(j, d));
    auto it = memo_->find(key);
    if (it == memo_->end()) {
      WedgeNF v(cutoff_);
      for (int e = 0; e <= j - 1; ++e)
        v.add(Atom::moore(d + 2 + e, q), binomial(j - 1, e));
      LoopDecomposition sub = HiltonMilnor(v, cutoff_, memo_).run();
      it = memo_->emplace(key, std::move(sub)).first;
    }
    for (auto& [f, m] : it->second.factors()) dec_.add(f, checked_mul(m, L));
  }

  int cutoff_;
  std::int64_t total_letters_ = 0;
  std::vector<std::int64_t> sphere_letters_;
  std::map<std::int64_t, std::vector<std::int64_t>> moore_letters_;
  std::unique_ptr<PowerMemo> own_memo_;
  PowerMemo* memo_ = nullptr;
  LoopDecomposition dec_;
};

}  // namespace detail

// Decompose the loops on a wedge of spheres and Moore spaces into a product
// of loops on spheres and Moore spaces, truncated by connectivity: the result
// carries every factor that is less than (cutoff-1)-connected.  The wedge
// must be complete through bottom dimension cutoff (callers that build w by
// truncation at the same cutoff satisfy this automatically).
inline LoopDecomposition loop_wedge_decompose(const WedgeNF& w, int cutoff) {
  return detail::HiltonMilnor(w, cutoff).run();
}

}  // namespace loopcalc

#endif  // LOOPCALC_HILTON_HPP
