#include "log_number.hpp"

#include <cmath>

namespace arithdyn {

LogNumber::LogNumber(Rational argument) : arg_(std::move(argument)) {
  arg_.canonicalize();
  if (arg_ <= 0) fail(ErrorCode::Domain, "logarithm argument must be a positive rational, got " + to_string(arg_));
}

double LogNumber::to_double() const {
  long e_num = 0, e_den = 0;
  double m_num = mpz_get_d_2exp(&e_num, arg_.get_num_mpz_t());
  double m_den = mpz_get_d_2exp(&e_den, arg_.get_den_mpz_t());
  return std::log(m_num) - std::log(m_den) + static_cast<double>(e_num - e_den) * std::log(2.0);
}

Interval LogNumber::enclose(mpfr_prec_t precision) const { return Interval::point(arg_, precision).log(); }

LogNumber& LogNumber::operator+=(const LogNumber& other) {
  arg_ *= other.arg_;
  arg_.canonicalize();
  return *this;
}

LogNumber LogNumber::times(long k) const { return LogNumber(pow(arg_, k)); }

LogNumber max(const LogNumber& a, const LogNumber& b) { return a < b ? b : a; }

namespace {

size_t rational_bits(const Rational& q) { return bit_length(q.get_num()) + bit_length(q.get_den()); }

int interval_sign(const Integer& A, const Rational& x, const Integer& B, const Rational& y) {
  mpfr_prec_t prec = 128;
  for (int attempt = 0; attempt <= kMaxPrecisionDoublings; ++attempt, prec *= 2) {
    Interval lhs = LogNumber(x).enclose(prec) * Interval::point(A, prec);
    Interval rhs = LogNumber(y).enclose(prec) * Interval::point(B, prec);
    Interval diff = lhs - rhs;
    if (diff.is_positive()) return 1;
    if (diff.is_negative()) return -1;
  }
  fail(ErrorCode::PrecisionExhausted, "log comparison undecided after precision doublings");
}

}  // namespace

int compare_scaled(const Rational& a, const LogNumber& x, const Rational& b, const LogNumber& y) {
  // multiply through by den(a)*den(b) > 0
  Integer A = a.get_num() * b.get_den();
  Integer B = b.get_num() * a.get_den();
  Rational xa = x.argument(), yb = y.argument();
  if (A < 0) {
    A = -A;
    xa = 1 / xa;
  }
  if (B < 0) {
    B = -B;
    yb = 1 / yb;
  }
  if (A == 0 || xa == 1) return -LogNumber(yb).sign() * (B == 0 ? 0 : 1);
  if (B == 0 || yb == 1) return LogNumber(xa).sign();
  Integer g;
  mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  A /= g;
  B /= g;

  const double estimate = static_cast<double>(rational_bits(xa)) * A.get_d() + static_cast<double>(rational_bits(yb)) * B.get_d();
  if (estimate <= static_cast<double>(kCrossExponentBitGuard)) {
    // xa^A vs yb^B  <=>  num(xa)^A * den(yb)^B vs num(yb)^B * den(xa)^A
    const unsigned long ea = A.get_ui(), eb = B.get_ui();
    Integer lhs = pow(Integer(xa.get_num()), ea) * pow(Integer(yb.get_den()), eb);
    Integer rhs = pow(Integer(yb.get_num()), eb) * pow(Integer(xa.get_den()), ea);
    int c = cmp(lhs, rhs);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  return interval_sign(A, xa, B, yb);
}

}  // namespace arithdyn
