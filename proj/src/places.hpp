#pragma once

#include <optional>
#include <string>

#include "log_number.hpp"
#include "numeric.hpp"
#include "real.hpp"

namespace arithdyn {

// A place of Q: the archimedean absolute value or the p-adic one. All local
// degrees are 1.
class Place {
 public:
  static Place archimedean() { return Place(); }
  // Throws InvalidArgument unless p is prime.
  static Place finite(const Integer& p);
  static Place finite(long p) { return finite(Integer(p)); }
  // "inf" or a decimal prime.
  static Place parse(const std::string& text);

  bool is_archimedean() const { return prime_ == 0; }
  const Integer& prime() const { return prime_; }
  std::string to_string() const { return is_archimedean() ? "inf" : prime_.get_str(); }

  friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }
  friend bool operator<(const Place& a, const Place& b) { return a.prime_ < b.prime_; }

 private:
  Place() = default;
  Integer prime_ = 0;
};

// A point of P^1(Q) as coprime integers [x0:x1] with x1 > 0, or [1:0].
// The affine coordinate is x0/x1.
class ProjPoint {
 public:
  ProjPoint(const Integer& x0, const Integer& x1);
  static ProjPoint from_rational(const Rational& x);
  static ProjPoint infinity() { return ProjPoint(1, 0); }
  // "inf" or a rational "p/q".
  static ProjPoint parse(const std::string& text);

  const Integer& x0() const { return x0_; }
  const Integer& x1() const { return x1_; }
  bool is_infinity() const { return x1_ == 0; }
  Rational affine() const;  // throws Domain at infinity
  size_t max_bits() const { return std::max(bit_length(x0_), bit_length(x1_)); }
  std::string to_string() const;

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.x0_ == b.x0_ && a.x1_ == b.x1_; }

 private:
  Integer x0_;
  Integer x1_;
};

// x0*y1 - x1*y0 for the normalized coordinates.
Integer cross_product(const ProjPoint& x, const ProjPoint& y);

// v_p(x) for nonzero rational x.
long valuation(const Rational& x, const Integer& p);

// |x|_v as an exact rational (the archimedean value is |x| itself).
Rational abs_at(const Rational& x, const Place& v);

// log^+ |x|_v = max(0, log |x|_v).
LogNumber log_plus_abs(const Rational& x, const Place& v);

// rho_v(x, y): exact at finite places, floating at the archimedean place.
struct ChordalDistance {
  std::optional<Rational> exact;
  BigFloat value;
  double to_double() const { return value.to_double(); }
};

ChordalDistance chordal(const ProjPoint& x, const ProjPoint& y, const Place& v,
                        mpfr_prec_t precision = kDefaultPrecision);

// lambda_v(x, y) with max norms at every place; requires x != y.
LogNumber log_chordal(const ProjPoint& x, const ProjPoint& y, const Place& v);

}  // namespace arithdyn
