#pragma once

#include "numeric.hpp"
#include "places.hpp"
#include "ratmap.hpp"

namespace arithdyn {

struct PrecisionSchedule {
  unsigned long initial_digits = 64;
  unsigned long max_digits = 1UL << 16;
  void validate() const;
};

// v_p(a^n - b^n) = v_p(a - b) + v_p(n) for odd prime p with p | a - b, p not dividing a.
// Distinct errors: a = b (Domain), p even or not prime (InvalidArgument),
// n < 1 (InvalidArgument), p not dividing a - b (Domain), p dividing a (Domain).
long lte_valuation(const Integer& a, const Integer& b, const Integer& n, const Integer& p);

struct OrbitValuation {
  long value = 0;
  unsigned long digits = 0;  // working precision p^k that certified the value
};

// Below this many bits the orbit is iterated exactly first, to reject
// phi^n(alpha) = beta and phi^n(alpha) = infinity.
inline constexpr size_t kExactPrecheckBits = 4096;

// v_p(phi^n(alpha) - beta) by projective iteration with k p-adic digits of
// relative precision per coordinate (p^v times a unit known mod p^k). Digits
// are lost only to cancellation inside the homogeneous evaluation, so orbits
// that run p-adically close to infinity stay cheap. k doubles whenever the
// answer is not determined, up to max_digits (PrecisionExhausted, with the
// failing orbit index).
OrbitValuation orbit_valuation(const RationalMap& phi, const ProjPoint& alpha, const Rational& beta,
                               const Integer& p, unsigned long n, const PrecisionSchedule& schedule = {});

// Multiplicative order of beta modulo p; requires v_p(beta) = 0.
Integer min_exponent_kv(const Rational& beta, const Integer& p);

}  // namespace arithdyn
