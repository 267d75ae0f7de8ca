#ifndef LOOPCALC_SERIES_HPP
#define LOOPCALC_SERIES_HPP

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "loopcalc/error.hpp"
#include "loopcalc/numeric.hpp"

namespace loopcalc {

// Coefficient-field tag for Poincare series: the rationals (p == 0) or F_p.
// The tag decides which homology groups contribute dimensions (torsion is
// invisible rationally); the coefficients themselves are dimension counts
// and are always held as exact checked 64-bit integers.
struct Field {
  std::int64_t p = 0;

  static Field rationals() { return {0}; }

  static Field prime_field(std::int64_t p) {
    auto pp = as_prime_power(p);
    if (!pp.valid() || pp.r != 1)
      throw BadSpec("prime_field: " + std::to_string(p) + " is not prime");
    return {p};
  }

  bool is_rational() const { return p == 0; }

  friend bool operator==(const Field&, const Field&) = default;

  std::string to_string() const {
    return p == 0 ? "Q" : "F_" + std::to_string(p);
  }
};

// Power series truncated at a top degree (inclusive): coefficients of
// t^0 .. t^cutoff are stored, everything above is discarded.
class TruncatedSeries {
 public:
  TruncatedSeries(Field f, int cutoff)
      : field_(f), coeffs_(static_cast<std::size_t>(cutoff) + 1, 0) {
    internal_check(cutoff >= 0, "series cutoff must be nonnegative");
  }

  static TruncatedSeries zero(Field f, int cutoff) { return {f, cutoff}; }

  static TruncatedSeries one(Field f, int cutoff) {
    TruncatedSeries s(f, cutoff);
    s.set(0, 1);
    return s;
  }

  static TruncatedSeries monomial(Field f, int cutoff, int degree,
                                  std::int64_t c = 1) {
    TruncatedSeries s(f, cutoff);
    if (degree <= cutoff) s.set(degree, c);
    return s;
  }

  Field field() const { return field_; }
  int cutoff() const { return static_cast<int>(coeffs_.size()) - 1; }

  std::int64_t coeff(int degree) const {
    internal_check(degree >= 0, "negative series degree");
    if (degree >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[static_cast<std::size_t>(degree)];
  }

  void set(int degree, std::int64_t c) {
    internal_check(degree >= 0 && degree < static_cast<int>(coeffs_.size()),
                   "series degree out of range");
    coeffs_[static_cast<std::size_t>(degree)] = c;
  }

  void add_to(int degree, std::int64_t c) {
    if (degree > cutoff()) return;
    set(degree, checked_add(coeff(degree), c));
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    check_compatible(o);
    for (int d = 0; d <= cutoff(); ++d) add_to(d, o.coeff(d));
    return *this;
  }

  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    check_compatible(o);
    for (int d = 0; d <= cutoff(); ++d)
      set(d, checked_sub(coeff(d), o.coeff(d)));
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
    a += b;
    return a;
  }

  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
    a -= b;
    return a;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a,
                                   const TruncatedSeries& b) {
    a.check_compatible(b);
    TruncatedSeries r(a.field_, a.cutoff());
    for (int i = 0; i <= a.cutoff(); ++i) {
      if (a.coeff(i) == 0) continue;
      for (int j = 0; i + j <= a.cutoff(); ++j) {
        if (b.coeff(j) == 0) continue;
        r.add_to(i + j, checked_mul(a.coeff(i), b.coeff(j)));
      }
    }
    return r;
  }

  TruncatedSeries& operator*=(const TruncatedSeries& o) {
    *this = *this * o;
    return *this;
  }

  // Multiplicative inverse; the constant term must be +1 or -1 so the
  // inverse again has integer coefficients.
  TruncatedSeries inverse() const {
    std::int64_t u = coeff(0);
    if (u != 1 && u != -1)
      throw Error(ErrorClass::internal, "NonUnit",
                  "cannot invert constant term " + std::to_string(u) +
                      " in an integer-coefficient series");
    TruncatedSeries r(field_, cutoff());
    r.set(0, u);
    for (int n = 1; n <= cutoff(); ++n) {
      std::int64_t acc = 0;
      for (int k = 1; k <= n; ++k)
        acc = checked_add(acc, checked_mul(coeff(k), r.coeff(n - k)));
      r.set(n, checked_mul(-u, acc));
    }
    return r;
  }

  // Divide by t^k (the k lowest coefficients must vanish).
  TruncatedSeries shifted_down(int k) const {
    internal_check(k >= 0, "shifted_down: negative shift");
    for (int d = 0; d < k && d <= cutoff(); ++d)
      internal_check(coeff(d) == 0,
                     "shifted_down: nonzero coefficient below the shift");
    TruncatedSeries r(field_, cutoff());
    for (int d = k; d <= cutoff(); ++d) r.set(d - k, coeff(d));
    return r;
  }

  TruncatedSeries shifted_up(int k) const {
    internal_check(k >= 0, "shifted_up: negative shift");
    TruncatedSeries r(field_, cutoff());
    for (int d = 0; d + k <= cutoff(); ++d) r.set(d + k, coeff(d));
    return r;
  }

  TruncatedSeries truncated_to(int new_cutoff) const {
    TruncatedSeries r(field_, new_cutoff);
    for (int d = 0; d <= new_cutoff; ++d) r.set(d, coeff(d));
    return r;
  }

  // Coefficients agree for every degree <= through (inclusive).
  bool equal_through(const TruncatedSeries& o, int through) const {
    if (field_ != o.field_) return false;
    for (int d = 0; d <= through; ++d)
      if (coeff(d) != o.coeff(d)) return false;
    return true;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int d = 0; d <= cutoff(); ++d) {
      std::int64_t c = coeff(d);
      if (c == 0) continue;
      if (first) {
        if (c < 0) os << "-";
        first = false;
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      std::int64_t a = c < 0 ? -c : c;
      if (d == 0)
        os << a;
      else {
        if (a != 1) os << a << "*";
        os << "t";
        if (d != 1) os << "^" << d;
      }
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  void check_compatible(const TruncatedSeries& o) const {
    internal_check(field_ == o.field_, "series field mismatch");
    internal_check(coeffs_.size() == o.coeffs_.size(), "series cutoff mismatch");
  }

  Field field_;
  std::vector<std::int64_t> coeffs_;
};

}  // namespace loopcalc

#endif  // LOOPCALC_SERIES_HPP
