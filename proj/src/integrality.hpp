#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heights.hpp"
#include "places.hpp"
#include "ratmap.hpp"

namespace arithdyn {

// A finite set of places of Q containing the archimedean place.
class PlaceSet {
 public:
  PlaceSet() = default;  // {inf}
  // "inf,3,5"; throws InvalidArgument without "inf", for duplicates or composites.
  static PlaceSet parse(const std::string& text);
  static PlaceSet from_primes(const std::vector<Integer>& primes);

  const std::vector<Integer>& primes() const { return primes_; }
  size_t size() const { return primes_.size() + 1; }
  bool contains(const Integer& p) const;
  std::vector<Place> places() const;
  std::string to_string() const;

 private:
  std::vector<Integer> primes_;  // sorted, distinct
};

// A prime outside S dividing the cross product, or an unresolved cofactor
// (composite, or too large to test) when is_prime is false.
struct Witness {
  Integer value;
  bool is_prime = true;
};

struct IntegralityVerdict {
  bool integral = false;
  std::vector<Witness> witnesses;
};

// Cofactors above this many bits are reported unresolved without a primality test.
inline constexpr size_t kWitnessPrimalityBits = 4096;

// Divides out the primes of S, then extracts witnesses from the residual.
IntegralityVerdict s_integrality_of_cross(const Integer& cross, const PlaceSet& s);

// x is S-integral relative to y; Domain error when x = y.
IntegralityVerdict is_s_integral(const ProjPoint& x, const ProjPoint& y, const PlaceSet& s);

bool is_s_unit(const Rational& x, const PlaceSet& s);

// sum_{v in S} log+ |x|_v >= eps h(x), compared exactly.
bool is_quasi_integral(const Rational& x, const PlaceSet& s, const Rational& eps);

struct OrbitScanEntry {
  unsigned long n = 0;
  ProjPoint point = ProjPoint::infinity();
  HeightValue height;
  bool integral = false;
  std::vector<Witness> witnesses;
  bool equals_beta = false;
  bool at_infinity = false;
};

struct OrbitScanReport {
  std::vector<OrbitScanEntry> entries;
  std::vector<unsigned long> integral_indices;
  std::vector<unsigned long> excluded;  // orbit equal to beta, or at infinity
  unsigned long first_index = 0;
  bool truncated = false;
  long truncated_at = -1;
};

struct ScanOptions {
  unsigned long n_max = 10;
  size_t bit_cap = kDefaultBitCap;
  unsigned threads = 0;
};

// Verdicts for first_index <= n <= n_max, where first_index is 1 when
// alpha = beta and 0 otherwise. Orbit points equal to beta or to infinity
// are listed in `excluded` and never counted as integral. A bit-cap hit
// ends the scan with a partial report and truncated = true.
OrbitScanReport scan_orbit(const RationalMap& phi, const ProjPoint& alpha, const ProjPoint& beta,
                           const PlaceSet& s, const ScanOptions& options = {});

struct QuasiScanReport {
  std::vector<unsigned long> gamma;
  std::vector<unsigned long> skipped;  // orbit at beta or at infinity
  unsigned long checked = 0;
  bool truncated = false;
  long truncated_at = -1;
};

// All n <= n_max for which (phi^n(alpha) - beta)^{-1} is quasi-(S, eps)-integral.
// beta must be finite.
QuasiScanReport scan_quasi(const RationalMap& phi, const ProjPoint& alpha, const ProjPoint& beta,
                           const PlaceSet& s, const Rational& eps, const ScanOptions& options = {});

struct AdversarialInstance {
  RationalMap phi;
  ProjPoint alpha;
  ProjPoint beta;
  PlaceSet s;
  Integer a_m;  // product of the numerators of f^i(0), i = 1..m, for f = z^2 + 1
  std::vector<Integer> base_orbit;  // f^i(0), i = 0..m
};

inline constexpr unsigned kAdversarialMaxM = 10;

// phi_m = psi o (z^2 + 1) o psi^{-1} with psi(z) = z / a_m + 1, alpha = beta = 1.
// The first m orbit points then have cross product 1 with beta.
AdversarialInstance adversarial_family(unsigned m);

}  // namespace arithdyn
