#pragma once

#include <mpfr.h>

#include <string>

#include "numeric.hpp"

namespace arithdyn {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

// Owning wrapper around mpfr_t. Arithmetic helpers take an explicit rounding
// mode so the interval code can round outward.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = kDefaultPrecision);
  BigFloat(double value, mpfr_prec_t precision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat from(const Integer& x, mpfr_prec_t precision, mpfr_rnd_t rnd = MPFR_RNDN);
  static BigFloat from(const Rational& x, mpfr_prec_t precision, mpfr_rnd_t rnd = MPFR_RNDN);

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  std::string to_string(int digits = 20) const;
  int sign() const { return mpfr_sgn(value_); }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }

  friend int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.value_, b.value_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.value_, b.value_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  BigFloat operator-() const;

 private:
  mpfr_t value_;
};

BigFloat log(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat abs(const BigFloat& x);

// Closed interval [lo, hi] with outward-rounded endpoint arithmetic. Every
// operation returns an enclosure of the exact result set.
class Interval {
 public:
  explicit Interval(mpfr_prec_t precision = kDefaultPrecision);
  Interval(BigFloat lo, BigFloat hi);

  static Interval point(const Integer& x, mpfr_prec_t precision);
  static Interval point(const Rational& x, mpfr_prec_t precision);
  static Interval point(long x, mpfr_prec_t precision);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool is_positive() const { return lo_.sign() > 0; }
  bool is_negative() const { return hi_.sign() < 0; }
  bool contains(double x) const;
  BigFloat width() const;   // rounded up
  BigFloat mid() const;
  double lower_double() const { return lo_.to_double(MPFR_RNDD); }
  double upper_double() const { return hi_.to_double(MPFR_RNDU); }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);  // b must exclude 0
  Interval operator-() const;

  Interval scaled(long k) const;
  Interval abs() const;
  // Enclosure of log over a strictly positive interval.
  Interval log() const;
  friend Interval max(const Interval& a, const Interval& b);
  friend Interval hull(const Interval& a, const Interval& b);

 private:
  BigFloat lo_;
  BigFloat hi_;
};

}  // namespace arithdyn
