#pragma once

#include <string>
#include <utility>
#include <vector>

#include "numeric.hpp"
#include "places.hpp"
#include "ratmap.hpp"

namespace arithdyn {

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0;
  std::string notes;
};

// max(0, log x / log d)
double logplus_d(double x, int d);

// c1 |S| (log|S| + 1)^6
double bound_theorem1(double s, double c1);
// c4 |S| (log|S| + 1)^6 + log+_d((h(phi) + 1) / hhat(alpha))
double bound_theorem3(double s, int d, double h_phi, double hhat_alpha, double c4);
// c2 |S| + c3 (log|S| + 1)
double bound_power_lattes(double s, double c2, double c3);
// 3|S| + 12 log2|S| + 50
double bound_z2_explicit(double s);
// |S| + c7 log(|S| + 1) + log+_d((h(phi) + 1) / hhat(alpha))
double bound_critical(double s, int d, double h_phi, double hhat_alpha, double c7);

struct RothConstants {
  double c1 = 0;      // (2304 log r)^3
  double log_c2 = 0;  // log 28 + log Gamma(4608 log r + 2)
};
RothConstants roth_constants(long r);

// The N with d^(N-1) <= 56 * 2^(2d-2) |S| < d^N, in exact integer arithmetic.
long preimage_level_N(long d, long s);

// Volume of {x in [0,1]^m : sum x_i <= t}.
double simplex_volume(double t, int m);

// The t with simplex_volume(t, m) = 1/(2r), by bisection.
double solve_volume_threshold(int m, long r);

struct Diophantine5Input {
  std::vector<Rational> alpha;
  std::vector<double> beta_heights;
  std::vector<double> local_log_gaps;  // N_v log|alpha_h - beta_h|_v^{-1}
  Place place = Place::archimedean();
  double r = 1;
  double C = 1;
  double C_prime = 1;
};

struct Diophantine5Result {
  int m = 0;
  bool condition1 = false;
  bool condition2 = false;
  bool condition3a = false;
  bool condition3b = false;
  double condition1_factor = 0;   // 4 C r^(1/m)
  double log_condition2_ratio = 0;  // log(2 (4 m C r^(1/m))^(2^(m-1)))
  double log_condition3a = 0;     // log of the first right-hand side of (3)
  double condition3b_threshold = 0;
  std::vector<double> alpha_heights;
  bool all() const { return condition1 && condition2 && condition3a && condition3b; }
};

Diophantine5Result diophantine5_check(const Diophantine5Input& in);

struct ExplicitZ2Params {
  long N = 0;           // ceil(3 log2|S|) + 9
  Integer r_bound;      // 2^(2N-1)
  double m_threshold = 0;      // 9 log2|S| + 40
  double gap_threshold = 0;    // 8 log2|S| + 41
  double final_threshold = 0;  // 11 log2|S| + 45
};
ExplicitZ2Params explicit_z2_params(long s);

struct DistributionGap {
  double slack = 0;         // max_i log|x - y_i|^{-1} - lower bound
  double nearest_log = 0;   // max_i log|x - y_i|^{-1}
  double lower_bound = 0;   // log|x^(2^n) - y|^{-1} - h(y) - (2^n + n) log 2
  bool holds = false;       // slack >= -tol
};

inline constexpr mpfr_prec_t kDistributionPrecision = 128;

// phi = z^2 at the archimedean place, with the 2^n complex roots of z^(2^n) = y
// evaluated at kDistributionPrecision bits. Errors: n > 8, y = 0,
// x^(2^n) = y, or x within tol of a root.
DistributionGap distribution_gap_check(const Rational& x, const Rational& y, unsigned n, double tol);

struct LinearizationCheck {
  int order = 0;
  double max_deviation = 0;  // max |log|phi(z) - phi(beta)|_v - k log|z - beta|_v|
  unsigned samples_used = 0;
  unsigned samples_skipped = 0;  // poles of phi among the samples
};

// Samples z with |z - beta|_v = e^radius_log: on a circle at the archimedean
// place, z = beta + p^t u (p not dividing u, t = round(-radius_log / log p))
// at finite places, evaluated exactly there.
LinearizationCheck euclid_linearization_check(const RationalMap& phi, const Rational& beta, const Place& v,
                                              unsigned samples, double radius_log);

}  // namespace arithdyn
