#pragma once

#include <compare>

#include "numeric.hpp"
#include "real.hpp"

namespace arithdyn {

// The real number log(q) for a positive rational q. Sums are products of the
// arguments, so rational-coefficient comparisons between such numbers reduce
// to integer comparisons.
class LogNumber {
 public:
  LogNumber() : arg_(1) {}
  explicit LogNumber(Rational argument);
  explicit LogNumber(const Integer& argument) : LogNumber(Rational(argument)) {}

  static LogNumber zero() { return LogNumber(); }

  const Rational& argument() const { return arg_; }
  bool is_zero() const { return arg_ == 1; }
  int sign() const { return cmp(arg_, 1) < 0 ? -1 : (arg_ == 1 ? 0 : 1); }

  double to_double() const;
  Interval enclose(mpfr_prec_t precision) const;

  LogNumber operator+(const LogNumber& other) const { return LogNumber(arg_ * other.arg_); }
  LogNumber operator-(const LogNumber& other) const { return LogNumber(arg_ / other.arg_); }
  LogNumber operator-() const { return LogNumber(1 / arg_); }
  LogNumber& operator+=(const LogNumber& other);
  // k * log q, exact.
  LogNumber times(long k) const;

  friend bool operator==(const LogNumber& a, const LogNumber& b) { return a.arg_ == b.arg_; }
  friend std::strong_ordering operator<=>(const LogNumber& a, const LogNumber& b) {
    int c = cmp(a.arg_, b.arg_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational arg_;
};

inline constexpr size_t kCrossExponentBitGuard = size_t{1} << 22;
inline constexpr int kMaxPrecisionDoublings = 8;

// Sign of a*log(x) - b*log(y). Exact by cross-exponentiation while the
// powers stay under kCrossExponentBitGuard bits; beyond that the sign is
// certified by interval evaluation at doubling precision, throwing
// PrecisionExhausted after kMaxPrecisionDoublings doublings.
int compare_scaled(const Rational& a, const LogNumber& x, const Rational& b, const LogNumber& y);

LogNumber max(const LogNumber& a, const LogNumber& b);

}  // namespace arithdyn
