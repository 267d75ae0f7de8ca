#ifndef LOOPCALC_LYNDON_HPP
#define LOOPCALC_LYNDON_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "loopcalc/error.hpp"
#include "loopcalc/numeric.hpp"

namespace loopcalc {

// Number of Lyndon words of length w over a k-letter alphabet:
// (1/w) * sum over e | w of moebius(e) * k^(w/e).
inline std::int64_t witt_count(std::int64_t k, int w) {
  if (k < 0) throw BadSpec("witt_count: alphabet size must be nonnegative");
  if (w < 1) throw BadSpec("witt_count: word length must be >= 1");
  std::int64_t acc = 0;
  for (auto e : divisors(w))
    acc = checked_add(acc, checked_mul(moebius(e),
                                       checked_pow(k, w / static_cast<int>(e))));
  return exact_div(acc, w);
}

// All Lyndon words of length <= maxlen over the alphabet a, b, c, ... of size
// k, in lexicographic order (Duval's generation).
inline std::vector<std::string> lyndon_enumerate(int k, int maxlen) {
  if (k < 1 || k > 26)
    throw BadSpec("lyndon_enumerate: alphabet size must be in [1, 26]");
  if (maxlen < 1) throw BadSpec("lyndon_enumerate: maxlen must be >= 1");
  std::vector<std::string> out;
  std::vector<int> w{0};
  while (!w.empty()) {
    std::string s;
    for (int c : w) s.push_back(static_cast<char>('a' + c));
    out.push_back(std::move(s));
    std::size_t m = w.size();
    while (w.size() < static_cast<std::size_t>(maxlen))
      w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == k - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graded Witt counting.
//
// For a weighted alphabet with generating polynomial v(t) (v(0) = 0), the
// Chen-Fox-Lyndon factorization gives, degreewise,
//     product over D >= 1 of (1 - t^D)^(-L_D)  =  1 / (1 - v(t)),
// where L_D counts Lyndon words of total weight D.  Logarithmic
// differentiation turns this into M(t) := t v'(t) / (1 - v(t)) with
//     M_N = sum over D | N of D * L_D,
// inverted by Moebius.  The same works bigraded: letters may carry a marker
// exponent in x (here: the number of Moore letters in a word), v = s(t) +
// x * u(t), and
//     N * L_(J,N) = sum over e | gcd(J,N) of moebius(e) * M_(J/e, N/e)
// with the convention gcd(0, N) = N.  This counts factors without ever
// enumerating words, which is what makes large cutoffs affordable.
// ---------------------------------------------------------------------------

// Lyndon-word counts over an alphabet with sphere letters of weights given by
// s (coefficient s[d] = number of letters of weight d, marker x^0) and marked
// letters of weights u (marker x^1).  Returns counts[d][j] = number of Lyndon
// words of total weight d containing exactly j marked letters, for d <= dmax
// and j <= jmax.
class GradedWittCounter {
 public:
  GradedWittCounter(std::vector<std::int64_t> s, std::vector<std::int64_t> u,
                    int dmax, int jmax)
      : s_(std::move(s)), u_(std::move(u)), dmax_(dmax), jmax_(jmax) {
    internal_check(dmax_ >= 0 && jmax_ >= 0, "bad counting bounds");
    s_.resize(static_cast<std::size_t>(dmax_) + 1, 0);
    u_.resize(static_cast<std::size_t>(dmax_) + 1, 0);
    internal_check(s_[0] == 0 && u_[0] == 0, "letters must have weight >= 1");
    compute();
  }

  // Number of Lyndon words of weight d with j marked letters.
  std::int64_t count(int j, int d) const {
    if (d < 1 || d > dmax_ || j < 0 || j > jmax_) return 0;
    std::int64_t g = j == 0 ? d : std::gcd(static_cast<std::int64_t>(j),
                                           static_cast<std::int64_t>(d));
    Wide acc = 0;
    for (auto e : divisors(g)) {
      if (moebius(e) == 0) continue;
      int jj = static_cast<int>(j / e), dd = static_cast<int>(d / e);
      acc = wide_add(acc, wide_mul(moebius(e), m_at(jj, dd)));
    }
    internal_check(acc % d == 0, "graded Witt count not divisible by weight");
    return narrow_to_int64(acc / d, "Lyndon word count (j = " +
                                        std::to_string(j) + ", d = " +
                                        std::to_string(d) + ")");
  }

 private:
  Wide m_at(int j, int d) const {
    if (d < 0 || d > dmax_ || j < 0 || j > jmax_) return 0;
    return m_[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)];
  }

  void compute() {
    // b = 1 / (1 - v) degree by degree, then M = t v' * b; v = s + x u has
    // x-degree <= 1, so every step is a cheap sparse multiply.
    std::vector<std::vector<Wide>> b(
        static_cast<std::size_t>(dmax_) + 1,
        std::vector<Wide>(static_cast<std::size_t>(jmax_) + 1, 0));
    b[0][0] = 1;
    for (int d = 1; d <= dmax_; ++d)
      for (int k = 1; k <= d; ++k) {
        auto& prev = b[static_cast<std::size_t>(d - k)];
        auto& cur = b[static_cast<std::size_t>(d)];
        Wide sk = s_[static_cast<std::size_t>(k)];
        Wide uk = u_[static_cast<std::size_t>(k)];
        if (sk != 0)
          for (int j = 0; j <= jmax_; ++j)
            cur[static_cast<std::size_t>(j)] =
                wide_add(cur[static_cast<std::size_t>(j)],
                         wide_mul(sk, prev[static_cast<std::size_t>(j)]));
        if (uk != 0)
          for (int j = 1; j <= jmax_; ++j)
            cur[static_cast<std::size_t>(j)] = wide_add(
                cur[static_cast<std::size_t>(j)],
                wide_mul(uk, prev[static_cast<std::size_t>(j - 1)]));
      }
    m_.assign(static_cast<std::size_t>(dmax_) + 1,
              std::vector<Wide>(static_cast<std::size_t>(jmax_) + 1, 0));
    for (int d = 1; d <= dmax_; ++d)
      for (int k = 1; k <= d; ++k) {
        auto& prev = b[static_cast<std::size_t>(d - k)];
        auto& cur = m_[static_cast<std::size_t>(d)];
        Wide sk = wide_mul(k, s_[static_cast<std::size_t>(k)]);
        Wide uk = wide_mul(k, u_[static_cast<std::size_t>(k)]);
        if (sk != 0)
          for (int j = 0; j <= jmax_; ++j)
            cur[static_cast<std::size_t>(j)] =
                wide_add(cur[static_cast<std::size_t>(j)],
                         wide_mul(sk, prev[static_cast<std::size_t>(j)]));
        if (uk != 0)
          for (int j = 1; j <= jmax_; ++j)
            cur[static_cast<std::size_t>(j)] = wide_add(
                cur[static_cast<std::size_t>(j)],
                wide_mul(uk, prev[static_cast<std::size_t>(j - 1)]));
      }
  }

  std::vector<std::int64_t> s_, u_;
  std::vector<std::vector<Wide>> m_;
  int dmax_, jmax_;
};

}  // namespace loopcalc

#endif  // LOOPCALC_LYNDON_HPP
