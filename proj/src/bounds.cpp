#include "bounds.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "heights.hpp"
#include "real.hpp"

namespace arithdyn {

namespace {

void require_s(double s) {
  if (!(s >= 1) || !std::isfinite(s)) fail(ErrorCode::InvalidArgument, "|S| must be at least 1");
}

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, std::string(name) + " must be finite");
}

}  // namespace

double logplus_d(double x, int d) {
  if (!(x > 0) || !std::isfinite(x)) fail(ErrorCode::Domain, "log+_d needs a positive argument");
  if (d < 2) fail(ErrorCode::InvalidArgument, "degree must be at least 2");
  return std::max(0.0, std::log(x) / std::log(static_cast<double>(d)));
}

double bound_theorem1(double s, double c1) {
  require_s(s);
  require_finite(c1, "c1");
  return c1 * s * std::pow(std::log(s) + 1, 6);
}

double bound_theorem3(double s, int d, double h_phi, double hhat_alpha, double c4) {
  require_s(s);
  require_finite(c4, "c4");
  if (!(hhat_alpha > 0)) fail(ErrorCode::Domain, "canonical height of alpha must be positive");
  return c4 * s * std::pow(std::log(s) + 1, 6) + logplus_d((h_phi + 1) / hhat_alpha, d);
}

double bound_power_lattes(double s, double c2, double c3) {
  require_s(s);
  require_finite(c2, "c2");
  require_finite(c3, "c3");
  return c2 * s + c3 * (std::log(s) + 1);
}

double bound_z2_explicit(double s) {
  require_s(s);
  return 3 * s + 12 * std::log2(s) + 50;
}

double bound_critical(double s, int d, double h_phi, double hhat_alpha, double c7) {
  require_s(s);
  require_finite(c7, "c7");
  if (!(hhat_alpha > 0)) fail(ErrorCode::Domain, "canonical height of alpha must be positive");
  return s + c7 * std::log(s + 1) + logplus_d((h_phi + 1) / hhat_alpha, d);
}

RothConstants roth_constants(long r) {
  if (r < 2) fail(ErrorCode::InvalidArgument, "r must be at least 2");
  const double lr = std::log(static_cast<double>(r));
  return {std::pow(2304 * lr, 3), std::log(28.0) + std::lgamma(4608 * lr + 2)};
}

long preimage_level_N(long d, long s) {
  if (d < 2) fail(ErrorCode::InvalidArgument, "degree must be at least 2");
  if (s < 1) fail(ErrorCode::InvalidArgument, "|S| must be at least 1");
  const Integer target = Integer(56) * pow(Integer(2), 2 * d - 2) * s;
  long n = 1;
  Integer dn = d;  // d^n
  while (dn <= target) {
    dn *= d;
    ++n;
  }
  return n;
}

double simplex_volume(double t, int m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "dimension must be at least 1");
  if (!(t >= 0) || !std::isfinite(t)) fail(ErrorCode::InvalidArgument, "t must be a nonnegative real");
  if (t >= m) return 1;
  double sum = 0, binom = 1, fact = 1;
  for (int i = 2; i <= m; ++i) fact *= i;
  for (int k = 0; k <= m && k <= t; ++k) {
    sum += (k % 2 == 0 ? 1 : -1) * binom * std::pow(t - k, m);
    binom = binom * (m - k) / (k + 1);
  }
  return std::clamp(sum / fact, 0.0, 1.0);
}

double solve_volume_threshold(int m, long r) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "dimension must be at least 1");
  if (r < 1) fail(ErrorCode::InvalidArgument, "r must be at least 1");
  const double target = 1.0 / (2.0 * static_cast<double>(r));
  double lo = 0, hi = m;
  for (int it = 0; it < 200 && hi - lo > 0; ++it) {
    const double mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;
    (simplex_volume(mid, m) < target ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

Diophantine5Result diophantine5_check(const Diophantine5Input& in) {
  const size_t m = in.alpha.size();
  if (m == 0) fail(ErrorCode::InvalidArgument, "need at least one alpha");
  if (in.beta_heights.size() != m || in.local_log_gaps.size() != m) {
    fail(ErrorCode::InvalidArgument, "alpha, beta heights and local gaps must have the same length");
  }
  if (!(in.r >= 1) || !(in.C > 0) || !(in.C_prime > 0)) {
    fail(ErrorCode::InvalidArgument, "r >= 1, C > 0 and C' > 0 are required");
  }
  Diophantine5Result out;
  out.m = static_cast<int>(m);
  for (const auto& a : in.alpha) out.alpha_heights.push_back(weil_height(a).value);
  const auto& h = out.alpha_heights;
  const double root = std::pow(in.r, 1.0 / static_cast<double>(m));
  const double log_k = std::ldexp(1.0, static_cast<int>(m) - 1) * std::log(4 * static_cast<double>(m) * in.C * root);

  out.condition1_factor = 4 * in.C * root;
  out.condition1 = true;
  for (size_t i = 0; i < m; ++i) out.condition1 = out.condition1 && in.local_log_gaps[i] >= out.condition1_factor * h[i];

  out.log_condition2_ratio = std::log(2.0) + log_k;
  out.condition2 = true;
  for (size_t i = 0; i + 1 < m; ++i) {
    bool ok = false;
    if (h[i] == 0) {
      ok = h[i + 1] > 0;
    } else if (h[i + 1] > 0) {
      ok = std::log(h[i + 1]) - std::log(h[i]) >= out.log_condition2_ratio;
    }
    out.condition2 = out.condition2 && ok;
  }

  double beta_sum = 0, beta_max = 0;
  for (double hb : in.beta_heights) {
    beta_sum += hb + 1;
    beta_max = std::max(beta_max, hb);
  }
  beta_sum += 2 * static_cast<double>(m);
  out.log_condition3a = std::log(in.C_prime) + log_k + std::log(beta_sum);
  out.condition3a = h[0] > 0 && std::log(h[0]) >= out.log_condition3a;
  out.condition3b_threshold = 2 * in.C_prime * (beta_max + std::log(2.0)) + std::log(4.0);
  out.condition3b = h[0] >= out.condition3b_threshold;
  return out;
}

ExplicitZ2Params explicit_z2_params(long s) {
  if (s < 1) fail(ErrorCode::InvalidArgument, "|S| must be at least 1");
  const Integer cube = Integer(s) * s * s;
  long k = 0;
  while (pow(Integer(2), k) < cube) ++k;
  ExplicitZ2Params out;
  out.N = k + 9;
  out.r_bound = pow(Integer(2), 2 * out.N - 1);
  const double l = std::log2(static_cast<double>(s));
  out.m_threshold = 9 * l + 40;
  out.gap_threshold = 8 * l + 41;
  out.final_threshold = 11 * l + 45;
  return out;
}

DistributionGap distribution_gap_check(const Rational& x, const Rational& y, unsigned n, double tol) {
  if (n > 8) fail(ErrorCode::InvalidArgument, "n must be at most 8");
  if (!(tol >= 0)) fail(ErrorCode::InvalidArgument, "tolerance must be nonnegative");
  if (y == 0) fail(ErrorCode::Domain, "y = 0: all preimages coincide");
  const unsigned long roots = 1UL << n;
  const Rational w = pow(x, static_cast<long>(roots)) - y;
  if (w == 0) fail(ErrorCode::Domain, "x^(2^n) = y: x is a preimage of y");

  const mpfr_prec_t prec = kDistributionPrecision;
  BigFloat xr = BigFloat::from(x, prec), rho = BigFloat::from(Rational(abs(y)), prec);
  mpfr_rootn_ui(rho.get(), rho.get(), roots, MPFR_RNDN);
  BigFloat pi(prec), theta(prec), c(prec), s(prec), dx(prec), dist(prec), best(prec);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpfr_set_inf(best.get(), 1);
  for (unsigned long i = 0; i < roots; ++i) {
    // theta = (arg y + 2 pi i) / 2^n
    mpfr_mul_ui(theta.get(), pi.get(), 2 * i + (y < 0 ? 1 : 0), MPFR_RNDN);
    mpfr_div_ui(theta.get(), theta.get(), roots, MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
    mpfr_mul(c.get(), c.get(), rho.get(), MPFR_RNDN);
    mpfr_mul(s.get(), s.get(), rho.get(), MPFR_RNDN);
    mpfr_sub(dx.get(), xr.get(), c.get(), MPFR_RNDN);
    mpfr_hypot(dist.get(), dx.get(), s.get(), MPFR_RNDN);
    if (dist < best) best = dist;
  }
  if (best.to_double() <= tol) fail(ErrorCode::Domain, "x lies within tolerance of a preimage of y");

  DistributionGap out;
  out.nearest_log = -log(best).to_double();
  out.lower_bound = -LogNumber(Rational(abs(w))).to_double() - weil_height(y).value -
                    static_cast<double>(roots + n) * std::numbers::ln2;
  out.slack = out.nearest_log - out.lower_bound;
  out.holds = out.slack >= -tol;
  return out;
}

namespace {

template <class T>
T eval_poly(const std::vector<Rational>& c, const T& z) {
  T acc = 0;
  for (size_t k = c.size(); k-- > 0;) acc = acc * z + T(c[k].get_d());
  return acc;
}

Rational eval_exact(const std::vector<Rational>& c, const Rational& z) {
  Rational acc = 0;
  for (size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

}  // namespace

LinearizationCheck euclid_linearization_check(const RationalMap& phi, const Rational& beta, const Place& v,
                                              unsigned samples, double radius_log) {
  if (samples == 0) fail(ErrorCode::InvalidArgument, "need at least one sample");
  if (!std::isfinite(radius_log)) fail(ErrorCode::InvalidArgument, "radius must be finite");
  const Vanishing van = vanishing_factorization(phi, beta);
  std::vector<Rational> g(phi.den().begin(), phi.den().end());
  LinearizationCheck out;
  out.order = van.order;

  if (v.is_archimedean()) {
    using C = std::complex<long double>;
    const long double log_gb = std::log(std::fabs(static_cast<long double>(van.g_beta.get_d())));
    const long double rho = std::exp(static_cast<long double>(radius_log));
    for (unsigned j = 0; j < samples; ++j) {
      const long double th = 2 * std::numbers::pi_v<long double> * j / samples;
      const C z = C(beta.get_d(), 0) + std::polar(rho, th);
      const long double q = std::abs(eval_poly(van.quotient, z)), gz = std::abs(eval_poly(g, z));
      if (q == 0 || gz == 0) {
        ++out.samples_skipped;
        continue;
      }
      const double dev = static_cast<double>(std::fabs(std::log(q) - std::log(gz) - log_gb));
      out.max_deviation = std::max(out.max_deviation, dev);
      ++out.samples_used;
    }
    return out;
  }

  const Integer& p = v.prime();
  const long t = std::lround(-radius_log / std::log(p.get_d()));
  const Rational step = pow(Rational(p), t);
  const long v_gb = valuation(van.g_beta, p);
  unsigned long u = 0;
  for (unsigned j = 0; j < samples; ++j) {
    do ++u;
    while (mpz_divisible_p(Integer(u).get_mpz_t(), p.get_mpz_t()));
    const Rational z = beta + step * static_cast<long>(u);
    const Rational q = eval_exact(van.quotient, z), gz = eval_exact(g, z);
    if (q == 0 || gz == 0) {
      ++out.samples_skipped;
      continue;
    }
    // log|q|_p - log|g(z)|_p - log|g(beta)|_p
    const long e = -valuation(q, p) + valuation(gz, p) + v_gb;
    out.max_deviation = std::max(out.max_deviation, std::fabs(static_cast<double>(e) * std::log(p.get_d())));
    ++out.samples_used;
  }
  return out;
}

}  // namespace arithdyn
