#pragma once

#include "log_number.hpp"
#include "places.hpp"
#include "ratmap.hpp"

namespace arithdyn {

struct HeightValue {
  LogNumber exact;  // log of an integer
  double value = 0;
};

// log max(|x0|, |x1|) for normalized coordinates.
HeightValue weil_height(const ProjPoint& x);
HeightValue weil_height(const Rational& x);

// Height of the joint coefficient vector [a_0 : ... : a_d : b_0 : ... : b_d].
HeightValue map_height(const RationalMap& phi);

// Each slack is >= 0 exactly when the corresponding inequality holds:
//   sum        h(x) + h(y) + log 2 - h(x + y)
//   difference h(x - y) - |h(x) - h(y)| + log 2
//   product    h(x) + h(y) - h(xy)
struct HeightSumSlacks {
  LogNumber sum;
  LogNumber difference;
  LogNumber product;
};

HeightSumSlacks height_sum_check(const Rational& x, const Rational& y);

// For every x:  d h(x) - e_low <= h(phi(x)) <= d h(x) + d e_up.
//   e_up  = h(phi) + log C(d+2, 2)
//   e_low = log(2 (d+1) B) from the Bezout identities G_i0 F0 + G_i1 F1 = x_i^(2d)
//           solved over Q. Scaling all G_ij to a primitive integer vector gives
//           lambda x_i^(2d) = sum G'_ij F_j with lambda = p/q; B is q times the
//           largest |coefficient| of G'.
struct HeightDropConstants {
  LogNumber e_up;
  LogNumber e_low;
  Integer bezout_bound;  // B
  double e_up_value() const { return e_up.to_double(); }
  double e_low_value() const { return e_low.to_double(); }
};

HeightDropConstants height_drop_constants(const RationalMap& phi);

struct CanonicalHeightOptions {
  double tolerance = 1e-9;
  unsigned max_iterations = 64;
  size_t bit_cap = kDefaultBitCap;
  // Exact orbit iteration only; BitCapExceeded once coordinates pass bit_cap.
  bool exact_only = false;
};

struct CanonicalHeightInterval {
  double lo = 0;
  double hi = 0;
  unsigned iterations_used = 0;
  // Index from which the orbit was followed by interval continuation, or -1.
  long continuation_from = -1;
  mpfr_prec_t precision = 0;
  double width() const { return hi - lo; }
  double mid() const { return (lo + hi) / 2; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Certified enclosure of the canonical height by telescoping:
//   h(phi^n x)/d^n - e_low/((d-1) d^n) <= hhat(x) <= h(phi^n x)/d^n + d e_up/((d-1) d^n).
// Small orbit points are iterated exactly. Past kContinuationBits the orbit is
// followed as (log|X_s|, X_t/X_s) in interval arithmetic, with the exact gcd
// of F0(X), F1(X) (a divisor of the resultant) tracked through residues of X
// modulo a power of the resultant.
CanonicalHeightInterval canonical_height(const RationalMap& phi, const ProjPoint& x,
                                         const CanonicalHeightOptions& options = {});

inline constexpr size_t kContinuationBits = 16384;

}  // namespace arithdyn
