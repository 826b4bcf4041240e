#pragma once

#include <map>
#include <vector>

#include "numeric.hpp"

namespace arithdyn {

struct SmoothPart {
  std::vector<long> exponents;
  Integer residual;
};

// value = prod p^e * residual with residual coprime to every listed prime.
SmoothPart strip_smooth(const Integer& value, const std::vector<Integer>& primes);

struct SolutionTriple {
  unsigned n = 0;
  unsigned long i = 0;
  unsigned long j = 0;
  friend bool operator==(const SolutionTriple&, const SolutionTriple&) = default;
};

inline constexpr unsigned kFermatMaxN = 24;

// 2^(2^n) for n = 0..n_max, computed once by repeated squaring.
class FermatPowers {
 public:
  explicit FermatPowers(unsigned n_max);
  unsigned n_max() const { return static_cast<unsigned>(powers_.size()) - 1; }
  const Integer& operator[](unsigned n) const { return powers_[n]; }
  unsigned long residue15(unsigned n) const { return residue15_[n]; }

 private:
  std::vector<Integer> powers_;
  std::vector<unsigned long> residue15_;
};

// All (n, i, j) with n <= n_max and y 2^(2^n) - x = 3^i 5^j, in increasing n.
std::vector<SolutionTriple> count_solutions(long x, long y, const FermatPowers& powers);
std::vector<SolutionTriple> count_solutions(long x, long y, unsigned n_max);

struct SweepRange {
  long x_min = -50, x_max = 50, y_min = -50, y_max = 50;
};

struct SweepResult {
  unsigned long pairs = 0;
  unsigned max_count = 0;          // n >= 0
  std::pair<long, long> argmax{0, 0};
  unsigned max_count_positive_n = 0;  // n >= 1
  std::pair<long, long> argmax_positive_n{0, 0};
  std::map<unsigned, unsigned long> histogram;  // solution count -> number of pairs
  bool bound_holds = true;                       // max_count <= 17
};

inline constexpr unsigned kFermatBound = 17;

// Every (x, y) in the ranges with x, y != 0, traversed x ascending then y
// ascending; the argmax is the first pair attaining the maximum.
SweepResult sweep(const SweepRange& range, unsigned n_max, unsigned threads = 0);

}  // namespace arithdyn
