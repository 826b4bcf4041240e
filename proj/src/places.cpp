#include "places.hpp"

namespace arithdyn {

Place Place::finite(const Integer& p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "place must be a prime, got " + p.get_str());
  Place v;
  v.prime_ = p;
  return v;
}

Place Place::parse(const std::string& text) {
  if (text == "inf" || text == "oo" || text == "infinity") return archimedean();
  return finite(parse_integer(text));
}

ProjPoint::ProjPoint(const Integer& x0, const Integer& x1) : x0_(x0), x1_(x1) {
  if (x0_ == 0 && x1_ == 0) fail(ErrorCode::InvalidArgument, "[0:0] is not a point of P^1");
  if (x1_ == 0) {
    x0_ = 1;
    return;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), x0_.get_mpz_t(), x1_.get_mpz_t());
  if (x1_ < 0) g = -g;
  mpz_divexact(x0_.get_mpz_t(), x0_.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(x1_.get_mpz_t(), x1_.get_mpz_t(), g.get_mpz_t());
}

ProjPoint ProjPoint::from_rational(const Rational& x) { return ProjPoint(x.get_num(), x.get_den()); }

ProjPoint ProjPoint::parse(const std::string& text) {
  if (text == "inf" || text == "oo" || text == "infinity") return infinity();
  return from_rational(parse_rational(text));
}

Rational ProjPoint::affine() const {
  if (is_infinity()) fail(ErrorCode::Domain, "the point at infinity has no affine coordinate");
  return Rational(x0_, x1_);
}

std::string ProjPoint::to_string() const {
  if (is_infinity()) return "inf";
  if (x1_ == 1) return x0_.get_str();
  return x0_.get_str() + "/" + x1_.get_str();
}

Integer cross_product(const ProjPoint& x, const ProjPoint& y) { return x.x0() * y.x1() - x.x1() * y.x0(); }

long valuation(const Rational& x, const Integer& p) {
  if (x == 0) fail(ErrorCode::Domain, "valuation of zero");
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "valuation base must be prime, got " + p.get_str());
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

Rational abs_at(const Rational& x, const Place& v) {
  if (v.is_archimedean()) return abs(x);
  if (x == 0) return 0;
  return pow(Rational(v.prime()), -valuation(x, v.prime()));
}

LogNumber log_plus_abs(const Rational& x, const Place& v) {
  if (x == 0) return LogNumber::zero();
  Rational a = abs_at(x, v);
  return a > 1 ? LogNumber(a) : LogNumber::zero();
}

ChordalDistance chordal(const ProjPoint& x, const ProjPoint& y, const Place& v, mpfr_prec_t precision) {
  Integer c = cross_product(x, y);
  if (!v.is_archimedean()) {
    // normalized coordinates have max p-adic norm 1
    Rational r = c == 0 ? Rational(0) : pow(Rational(v.prime()), -valuation(c, v.prime()));
    return {r, BigFloat::from(r, precision)};
  }
  BigFloat num = abs(BigFloat::from(c, precision));
  BigFloat nx = sqrt(BigFloat::from(Integer(x.x0() * x.x0() + x.x1() * x.x1()), precision));
  BigFloat ny = sqrt(BigFloat::from(Integer(y.x0() * y.x0() + y.x1() * y.x1()), precision));
  return {std::nullopt, num / (nx * ny)};
}

LogNumber log_chordal(const ProjPoint& x, const ProjPoint& y, const Place& v) {
  Integer c = cross_product(x, y);
  if (c == 0) fail(ErrorCode::Domain, "log-chordal distance of a point to itself is infinite");
  if (!v.is_archimedean()) return LogNumber(pow(v.prime(), valuation(c, v.prime())));
  Integer mx = std::max(abs_value(x.x0()), abs_value(x.x1()));
  Integer my = std::max(abs_value(y.x0()), abs_value(y.x1()));
  return LogNumber(Rational(mx * my, abs_value(c)));
}

}  // namespace arithdyn
