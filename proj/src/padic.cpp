#include "padic.hpp"

namespace arithdyn {

void PrecisionSchedule::validate() const {
  if (initial_digits < 1) fail(ErrorCode::InvalidArgument, "initial precision must be at least one digit");
  if (initial_digits > max_digits) fail(ErrorCode::InvalidArgument, "initial precision exceeds the maximum");
}

long lte_valuation(const Integer& a, const Integer& b, const Integer& n, const Integer& p) {
  if (a == b) fail(ErrorCode::Domain, "a = b: a^n - b^n = 0 has no valuation");
  if (p == 2) fail(ErrorCode::InvalidArgument, "lifting the exponent needs an odd prime, got 2");
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "p must be prime, got " + p.get_str());
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be at least 1");
  const Integer diff = a - b;
  if (!mpz_divisible_p(diff.get_mpz_t(), p.get_mpz_t())) {
    fail(ErrorCode::Domain, "p = " + p.get_str() + " does not divide a - b");
  }
  if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
    fail(ErrorCode::Domain, "p = " + p.get_str() + " divides a (and b)");
  }
  return valuation(diff, p) + valuation(n, p);
}

namespace {

// p^v * u with u a unit known modulo p^r. r = 0 means only "divisible by p^v"
// is known; v = kExact marks an exact zero.
struct PNum {
  long v = 0;
  Integer u;
  long r = 0;
  bool unknown() const { return r == 0; }
  long absolute() const { return v + r; }
};

constexpr long kExact = 1L << 60;

class PField {
 public:
  PField(const Integer& p, long digits) : p_(p), digits_(digits) {}

  PNum from(const Integer& c) const {
    if (c == 0) return {kExact, 0, 0};
    Integer u = c;
    const long v = remove_factor(u, p_);
    return unit(v, std::move(u), digits_);
  }

  PNum mul(const PNum& a, const PNum& b) const {
    if (a.unknown() || b.unknown()) return {std::min(a.v + b.v, kExact), 0, 0};
    return unit(a.v + b.v, a.u * b.u, std::min(a.r, b.r));
  }

  PNum add(const PNum& a, const PNum& b) const {
    const long abs_prec = std::min(a.absolute(), b.absolute());
    const PNum* terms[] = {&a, &b};
    long m = abs_prec;
    for (const PNum* t : terms)
      if (!t->unknown()) m = std::min(m, t->v);
    if (m >= abs_prec) return {abs_prec, 0, 0};
    Integer sum = 0;
    for (const PNum* t : terms) {
      if (t->unknown() || t->v >= abs_prec) continue;
      sum += t->u * power(t->v - m);
    }
    const long rel = abs_prec - m;
    mpz_mod(sum.get_mpz_t(), sum.get_mpz_t(), power(rel).get_mpz_t());
    if (sum == 0) return {abs_prec, 0, 0};
    const long e = remove_factor(sum, p_);
    return unit(m + e, std::move(sum), rel - e);
  }

  // Shift the valuation; exact for both known and unknown values.
  static PNum scaled(PNum a, long s) {
    if (a.v < kExact) a.v -= s;
    return a;
  }

 private:
  PNum unit(long v, Integer u, long r) const {
    mpz_mod(u.get_mpz_t(), u.get_mpz_t(), power(r).get_mpz_t());
    return {v, std::move(u), r};
  }
  Integer power(long e) const {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), p_.get_mpz_t(), static_cast<unsigned long>(e));
    return out;
  }

  Integer p_;
  long digits_;
};

struct Attempt {
  bool ok = false;
  long value = 0;
  long failed_at = -1;
};

PNum homogeneous(const PField& F, const std::vector<PNum>& c, const PNum& y0, const PNum& y1) {
  const size_t d = c.size() - 1;
  std::vector<PNum> p0{F.from(1)}, p1{F.from(1)};
  for (size_t k = 1; k <= d; ++k) {
    p0.push_back(F.mul(p0.back(), y0));
    p1.push_back(F.mul(p1.back(), y1));
  }
  PNum acc = F.from(0);
  for (size_t k = 0; k <= d; ++k) {
    if (c[k].v == kExact) continue;
    acc = F.add(acc, F.mul(c[k], F.mul(p0[k], p1[d - k])));
  }
  return acc;
}

Attempt relative_attempt(const RationalMap& phi, const ProjPoint& alpha, const ProjPoint& beta, const Integer& p,
                         unsigned long n, unsigned long k) {
  const PField F(p, static_cast<long>(k));
  std::vector<PNum> a, b;
  for (const auto& c : phi.num()) a.push_back(F.from(c));
  for (const auto& c : phi.den()) b.push_back(F.from(c));
  PNum y0 = F.from(alpha.x0()), y1 = F.from(alpha.x1());
  for (unsigned long i = 1; i <= n; ++i) {
    PNum f0 = homogeneous(F, a, y0, y1);
    PNum f1 = homogeneous(F, b, y0, y1);
    // divide out the common power of p; impossible once neither coordinate is known
    long s = kExact;
    if (!f0.unknown()) s = f0.v;
    if (!f1.unknown()) s = std::min(s, f1.v);
    if (s == kExact || (f0.unknown() && f0.v <= s) || (f1.unknown() && f1.v <= s)) {
      return {false, 0, static_cast<long>(i)};
    }
    y0 = PField::scaled(std::move(f0), s);
    y1 = PField::scaled(std::move(f1), s);
  }
  // phi^n(alpha) - beta = (y0 b1 - y1 b0) / (y1 b1)
  const PNum cross = F.add(F.mul(y0, F.from(beta.x1())), F.mul(F.from(-beta.x0()), y1));
  if (cross.unknown() || y1.unknown()) return {false, 0, static_cast<long>(n)};
  return {true, cross.v - y1.v - valuation(beta.x1(), p), -1};
}

}  // namespace

OrbitValuation orbit_valuation(const RationalMap& phi, const ProjPoint& alpha, const Rational& beta, const Integer& p,
                               unsigned long n, const PrecisionSchedule& schedule) {
  schedule.validate();
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "p must be prime, got " + p.get_str());
  const ProjPoint b = ProjPoint::from_rational(beta);

  // exact pre-check while the orbit is small
  ProjPoint x = alpha;
  bool small = true;
  for (unsigned long i = 0; i < n && small; ++i) {
    x = phi.apply(x);
    small = x.max_bits() <= kExactPrecheckBits;
  }
  if (small) {
    if (x == b) fail(ErrorCode::Domain, "phi^n(alpha) = beta; the valuation of 0 is undefined", static_cast<long>(n));
    if (x.is_infinity()) fail(ErrorCode::Domain, "phi^n(alpha) is the point at infinity", static_cast<long>(n));
  }

  long failed_at = -1;
  for (unsigned long k = schedule.initial_digits;; k = std::min(2 * k, schedule.max_digits)) {
    Attempt a = relative_attempt(phi, alpha, b, p, n, k);
    if (a.ok) return {a.value, k};
    failed_at = a.failed_at;
    if (k >= schedule.max_digits) break;
  }
  fail(ErrorCode::PrecisionExhausted,
       "valuation not determined with " + std::to_string(schedule.max_digits) + " p-adic digits (precision lost at index " +
           std::to_string(failed_at) + ")",
       failed_at);
}

Integer min_exponent_kv(const Rational& beta, const Integer& p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "p must be prime, got " + p.get_str());
  if (beta == 0 || valuation(beta, p) != 0) fail(ErrorCode::Domain, "beta must be a p-adic unit");
  Integer b, inv;
  mpz_invert(inv.get_mpz_t(), Integer(beta.get_den()).get_mpz_t(), p.get_mpz_t());
  b = beta.get_num() * inv;
  mpz_mod(b.get_mpz_t(), b.get_mpz_t(), p.get_mpz_t());

  const Integer group = p - 1;
  PartialFactorization f = partial_factor(group == 0 ? Integer(1) : group);
  if (f.cofactor != 1) fail(ErrorCode::Internal, "could not factor p - 1");
  Integer order = group;
  for (const auto& pp : f.primes) {
    for (long i = 0; i < pp.exponent; ++i) {
      Integer candidate = order / pp.prime;
      Integer r;
      mpz_powm(r.get_mpz_t(), b.get_mpz_t(), candidate.get_mpz_t(), p.get_mpz_t());
      if (r != 1) break;
      order = candidate;
    }
  }
  return order;
}

}  // namespace arithdyn
