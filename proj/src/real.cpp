#include "real.hpp"

#include <utility>
#include <vector>

namespace arithdyn {

BigFloat::BigFloat(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // leave `other` valid but cheap: swap with a fresh 2-bit value
  mpfr_init2(value_, 2);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::from(const Integer& x, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  BigFloat r(precision);
  mpfr_set_z(r.value_, x.get_mpz_t(), rnd);
  return r;
}

BigFloat BigFloat::from(const Rational& x, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  BigFloat r(precision);
  mpfr_set_q(r.value_, x.get_mpq_t(), rnd);
  return r;
}

std::string BigFloat::to_string(int digits) const {
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return std::string(buf.data());
}

namespace {
mpfr_prec_t joint(const BigFloat& a, const BigFloat& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint(a, b));
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint(a, b));
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigFloat BigFloat::operator-() const {
  BigFloat r(precision());
  mpfr_neg(r.value_, value_, MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}
BigFloat sqrt(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}
BigFloat abs(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------

Interval::Interval(mpfr_prec_t precision) : lo_(precision), hi_(precision) {}

Interval::Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

Interval Interval::point(const Integer& x, mpfr_prec_t precision) {
  return Interval(BigFloat::from(x, precision, MPFR_RNDD), BigFloat::from(x, precision, MPFR_RNDU));
}

Interval Interval::point(const Rational& x, mpfr_prec_t precision) {
  return Interval(BigFloat::from(x, precision, MPFR_RNDD), BigFloat::from(x, precision, MPFR_RNDU));
}

Interval Interval::point(long x, mpfr_prec_t precision) { return point(Integer(x), precision); }

bool Interval::contains(double x) const {
  return mpfr_cmp_d(lo_.get(), x) <= 0 && mpfr_cmp_d(hi_.get(), x) >= 0;
}

BigFloat Interval::width() const {
  BigFloat w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

BigFloat Interval::mid() const {
  BigFloat m(precision());
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

namespace {
mpfr_prec_t joint(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const auto prec = joint(a, b);
  Interval r(prec);
  BigFloat t(prec);
  const mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
  const mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) fail(ErrorCode::PrecisionExhausted, "interval division by an interval containing zero");
  const auto prec = joint(a, b);
  Interval r(prec);
  BigFloat t(prec);
  const mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
  const mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval Interval::scaled(long k) const {
  Interval r(precision());
  if (k >= 0) {
    mpfr_mul_si(r.lo_.get(), lo_.get(), k, MPFR_RNDD);
    mpfr_mul_si(r.hi_.get(), hi_.get(), k, MPFR_RNDU);
  } else {
    mpfr_mul_si(r.lo_.get(), hi_.get(), k, MPFR_RNDD);
    mpfr_mul_si(r.hi_.get(), lo_.get(), k, MPFR_RNDU);
  }
  return r;
}

Interval Interval::abs() const {
  if (lo_.sign() >= 0) return *this;
  if (hi_.sign() <= 0) return -*this;
  Interval r(precision());
  mpfr_set_zero(r.lo_.get(), 1);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  if (mpfr_less_p(r.hi_.get(), hi_.get())) mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (lo_.sign() <= 0) fail(ErrorCode::PrecisionExhausted, "logarithm of an interval that is not strictly positive");
  Interval r(precision());
  mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  mpfr_max(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

}  // namespace arithdyn
