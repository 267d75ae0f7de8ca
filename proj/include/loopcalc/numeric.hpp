#ifndef LOOPCALC_NUMERIC_HPP
#define LOOPCALC_NUMERIC_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "loopcalc/error.hpp"

namespace loopcalc {

// All series and multiplicity arithmetic runs through these checked helpers;
// a wrap silently corrupting a coefficient would defeat every oracle built on
// top, so overflow is a hard (internal) error instead.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("integer overflow in addition: " + std::to_string(a) +
                        " + " + std::to_string(b));
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw OverflowError("integer overflow in subtraction: " +
                        std::to_string(a) + " - " + std::to_string(b));
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("integer overflow in multiplication: " +
                        std::to_string(a) + " * " + std::to_string(b));
  return r;
}

// Exact division; remainder is a logic error in the Witt/Moebius inversions.
inline std::int64_t exact_div(std::int64_t a, std::int64_t b) {
  internal_check(b != 0, "exact_div by zero");
  internal_check(a % b == 0, "exact_div: " + std::to_string(a) +
                                 " not divisible by " + std::to_string(b));
  return a / b;
}

inline std::int64_t checked_pow(std::int64_t base, int exp) {
  internal_check(exp >= 0, "checked_pow: negative exponent");
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

// Word-count intermediates (power sums of a weighted alphabet) can pass 2^63
// while the Lyndon counts recovered from them still fit; they are carried in
// 128 bits and narrowed, with a check, only at the boundary.
using Wide = __int128;

inline Wide wide_add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("integer overflow in 128-bit addition");
  return r;
}

inline Wide wide_mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("integer overflow in 128-bit multiplication");
  return r;
}

inline std::int64_t narrow_to_int64(Wide v, const std::string& what) {
  if (v > static_cast<Wide>(std::numeric_limits<std::int64_t>::max()) ||
      v < static_cast<Wide>(std::numeric_limits<std::int64_t>::min()))
    throw OverflowError(what + " exceeds the 64-bit coefficient range");
  return static_cast<std::int64_t>(v);
}

// prime -> exponent, ascending
inline std::map<std::int64_t, int> factorize(std::int64_t n) {
  internal_check(n >= 1, "factorize: argument must be positive");
  std::map<std::int64_t, int> out;
  for (std::int64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  if (n > 1) ++out[n];
  return out;
}

// q = p^r with r >= 1?  Returns {p, r} or nullopt-equivalent {0, 0}.
struct PrimePower {
  std::int64_t p = 0;
  int r = 0;
  bool valid() const { return p != 0; }
};

inline PrimePower as_prime_power(std::int64_t q) {
  if (q < 2) return {};
  auto f = factorize(q);
  if (f.size() != 1) return {};
  return {f.begin()->first, f.begin()->second};
}

inline int moebius(std::int64_t n) {
  internal_check(n >= 1, "moebius: argument must be positive");
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    (void)p;
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = exact_div(checked_mul(r, n - k + i), i);
  return r;
}

}  // namespace loopcalc

#endif  // LOOPCALC_NUMERIC_HPP
