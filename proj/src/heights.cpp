#include "heights.hpp"

#include <cmath>

#include "linalg.hpp"

namespace arithdyn {

HeightValue weil_height(const ProjPoint& x) {
  LogNumber h(std::max(abs_value(x.x0()), abs_value(x.x1())));
  return {h, h.to_double()};
}

HeightValue weil_height(const Rational& x) { return weil_height(ProjPoint::from_rational(x)); }

HeightValue map_height(const RationalMap& phi) {
  Integer m = 0;
  for (const auto& c : phi.num()) m = std::max(m, abs_value(c));
  for (const auto& c : phi.den()) m = std::max(m, abs_value(c));
  LogNumber h(m);
  return {h, h.to_double()};
}

HeightSumSlacks height_sum_check(const Rational& x, const Rational& y) {
  const LogNumber log2(Integer(2));
  const LogNumber hx = weil_height(x).exact, hy = weil_height(y).exact;
  Rational s = x + y, diff = x - y, prod = x * y;
  HeightSumSlacks out;
  out.sum = hx + hy + log2 - weil_height(s).exact;
  out.difference = weil_height(diff).exact + log2 - max(hx - hy, hy - hx);
  out.product = hx + hy - weil_height(prod).exact;
  return out;
}

namespace {

// Coefficients (index k <-> x0^k x1^(d-1-k)) of G0, G1 with G0 F0 + G1 F1 = x_target^(2d-1).
std::vector<Rational> bezout_solution(const RationalMap& phi, int target) {
  const int d = phi.degree();
  const size_t n = 2 * static_cast<size_t>(d);
  RationalMatrix a(n, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> rhs(n, Rational(0));
  for (int m = 0; m < 2 * d; ++m) {
    for (int k = 0; k < d; ++k) {
      const int j = m - k;
      if (j < 0 || j > d) continue;
      a[m][k] = phi.num()[j];
      a[m][d + k] = phi.den()[j];
    }
  }
  rhs[target == 0 ? 2 * d - 1 : 0] = 1;
  return solve(std::move(a), std::move(rhs));
}

}  // namespace

HeightDropConstants height_drop_constants(const RationalMap& phi) {
  const int d = phi.degree();
  std::vector<Rational> coeffs = bezout_solution(phi, 0);
  for (auto& c : bezout_solution(phi, 1)) coeffs.push_back(std::move(c));

  Integer lcm = 1, content = 0;
  for (const auto& c : coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> scaled;
  for (const auto& c : coeffs) {
    scaled.emplace_back(c * lcm);
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.back().get_mpz_t());
  }
  Integer largest = 0;
  for (auto& c : scaled) largest = std::max(largest, abs_value(Integer(c / content)));
  Rational lambda(lcm, content);
  lambda.canonicalize();

  HeightDropConstants out;
  out.bezout_bound = largest * lambda.get_den();
  out.e_up = map_height(phi).exact + LogNumber(binomial(d + 2, 2));
  out.e_low = LogNumber(Integer(2 * (d + 1) * out.bezout_bound));
  return out;
}

namespace {

struct Enclosure {
  Interval lo_offset;  // e_low / (d-1)
  Interval hi_offset;  // d e_up / (d-1)
};

Enclosure tail_offsets(const HeightDropConstants& c, int d, mpfr_prec_t prec) {
  Interval dm1 = Interval::point(long(d - 1), prec);
  return {c.e_low.enclose(prec) / dm1, c.e_up.enclose(prec).scaled(d) / dm1};
}

// Returns true (and fills out) once the enclosure is tight enough.
bool settle(const Interval& h, unsigned n, int d, const Enclosure& off, double tol, CanonicalHeightInterval& out) {
  const mpfr_prec_t prec = h.precision();
  Interval dn = Interval::point(pow(Integer(d), n), prec);
  Interval lo = (h - off.lo_offset) / dn;
  Interval hi = (h + off.hi_offset) / dn;
  out.lo = std::max(0.0, lo.lower_double());
  out.hi = hi.upper_double();
  out.iterations_used = n;
  return out.hi - out.lo <= 2 * tol;
}

// sum c_k u0^k u1^(d-k)
Interval homogeneous_eval(const std::vector<Interval>& c, const Interval& u0, const Interval& u1) {
  const int d = static_cast<int>(c.size()) - 1;
  std::vector<Interval> u1pow{Interval::point(1L, u1.precision())};
  for (int k = 1; k <= d; ++k) u1pow.push_back(u1pow.back() * u1);
  Interval acc = c[d];
  for (int k = d - 1; k >= 0; --k) acc = acc * u0 + c[k] * u1pow[d - k];
  return acc;
}

CanonicalHeightInterval continue_in_intervals(const RationalMap& phi, const ProjPoint& start, unsigned n0,
                                              const HeightDropConstants& drop, const CanonicalHeightOptions& opt,
                                              mpfr_prec_t prec) {
  const int d = phi.degree();
  const Enclosure off = tail_offsets(drop, d, prec);

  Integer modulus = 1;
  const Integer res = abs_value(phi.resultant());
  if (res != 1) modulus = pow(res, opt.max_iterations - n0 + 1);
  Integer r0, r1;
  mpz_mod(r0.get_mpz_t(), start.x0().get_mpz_t(), modulus.get_mpz_t());
  mpz_mod(r1.get_mpz_t(), start.x1().get_mpz_t(), modulus.get_mpz_t());

  std::vector<Interval> a, b;
  for (int k = 0; k <= d; ++k) {
    a.push_back(Interval::point(phi.num()[k], prec));
    b.push_back(Interval::point(phi.den()[k], prec));
  }

  int s = abs_value(start.x0()) >= abs_value(start.x1()) ? 0 : 1;
  const Integer& xs = s == 0 ? start.x0() : start.x1();
  const Integer& xt = s == 0 ? start.x1() : start.x0();
  Interval L = Interval::point(abs_value(xs), prec).log();
  Interval t = Interval::point(Rational(xt, xs), prec);
  const Interval one = Interval::point(1L, prec);

  CanonicalHeightInterval out;
  out.continuation_from = static_cast<long>(n0);
  out.precision = prec;
  for (unsigned n = n0;; ++n) {
    if (settle(L + max(one, t.abs()).log(), n, d, off, opt.tolerance, out)) return out;
    if (n >= opt.max_iterations) {
      fail(ErrorCode::IterationCap,
           "canonical height did not reach tolerance within " + std::to_string(opt.max_iterations) + " iterations",
           static_cast<long>(n));
    }

    Integer g = 1;
    if (modulus != 1) {
      auto [f0, f1] = phi.evaluate(r0, r1);
      mpz_mod(f0.get_mpz_t(), f0.get_mpz_t(), modulus.get_mpz_t());
      mpz_mod(f1.get_mpz_t(), f1.get_mpz_t(), modulus.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), f0.get_mpz_t(), f1.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), modulus.get_mpz_t());
      mpz_divexact(r0.get_mpz_t(), f0.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(r1.get_mpz_t(), f1.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(modulus.get_mpz_t(), modulus.get_mpz_t(), g.get_mpz_t());
    }

    const Interval& u0 = s == 0 ? one : t;
    const Interval& u1 = s == 0 ? t : one;
    Interval A0 = homogeneous_eval(a, u0, u1), A1 = homogeneous_eval(b, u0, u1);
    const int next = compare(abs(A0.mid()), abs(A1.mid())) >= 0 ? 0 : 1;
    const Interval& lead = next == 0 ? A0 : A1;
    const Interval& other = next == 0 ? A1 : A0;
    if (lead.contains_zero()) fail(ErrorCode::PrecisionExhausted, "leading coordinate not separated from zero");
    L = L.scaled(d) + lead.abs().log() - Interval::point(g, prec).log();
    t = other / lead;
    s = next;
  }
}

}  // namespace

CanonicalHeightInterval canonical_height(const RationalMap& phi, const ProjPoint& x, const CanonicalHeightOptions& opt) {
  if (!(opt.tolerance > 0) || !std::isfinite(opt.tolerance)) {
    fail(ErrorCode::InvalidArgument, "tolerance must be a positive real");
  }
  const int d = phi.degree();
  const HeightDropConstants drop = height_drop_constants(phi);
  const mpfr_prec_t prec = 256;
  const Enclosure off = tail_offsets(drop, d, prec);
  const size_t switch_bits = opt.exact_only ? opt.bit_cap : std::min(opt.bit_cap, kContinuationBits);

  CanonicalHeightInterval out;
  out.precision = prec;
  ProjPoint cur = x;
  unsigned n = 0;
  for (;; ++n) {
    if (settle(weil_height(cur).exact.enclose(prec), n, d, off, opt.tolerance, out)) return out;
    if (n >= opt.max_iterations) {
      fail(ErrorCode::IterationCap,
           "canonical height did not reach tolerance within " + std::to_string(opt.max_iterations) + " iterations",
           static_cast<long>(n));
    }
    ProjPoint next = phi.apply(cur);
    if (next.max_bits() > switch_bits) {
      if (opt.exact_only) {
        fail(ErrorCode::BitCapExceeded,
             "orbit coordinates exceed " + std::to_string(opt.bit_cap) + " bits at index " + std::to_string(n + 1),
             static_cast<long>(n + 1));
      }
      break;
    }
    cur = std::move(next);
  }

  mpfr_prec_t p = prec;
  for (int attempt = 0; attempt <= kMaxPrecisionDoublings; ++attempt, p *= 2) {
    try {
      return continue_in_intervals(phi, cur, n, drop, opt, p);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionExhausted) throw;
    }
  }
  fail(ErrorCode::PrecisionExhausted, "interval continuation failed at every working precision");
}

}  // namespace arithdyn
