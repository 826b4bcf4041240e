#include "fermatlab.hpp"

#include <cstdlib>

namespace arithdyn {

SmoothPart strip_smooth(const Integer& value, const std::vector<Integer>& primes) {
  if (value < 1) fail(ErrorCode::InvalidArgument, "strip_smooth needs a positive integer");
  SmoothPart out;
  out.residual = value;
  for (const auto& p : primes) {
    if (p < 2) fail(ErrorCode::InvalidArgument, "primes must be at least 2");
    out.exponents.push_back(remove_factor(out.residual, p));
  }
  return out;
}

FermatPowers::FermatPowers(unsigned n_max) {
  if (n_max > kFermatMaxN) {
    fail(ErrorCode::BitCapExceeded, "n_max above " + std::to_string(kFermatMaxN) + " exceeds the bit budget");
  }
  powers_.emplace_back(2);
  for (unsigned n = 1; n <= n_max; ++n) powers_.push_back(powers_.back() * powers_.back());
  for (const auto& p : powers_) residue15_.push_back(mpz_fdiv_ui(p.get_mpz_t(), 15));
}

std::vector<SolutionTriple> count_solutions(long x, long y, const FermatPowers& powers) {
  if (x == 0 || y == 0) fail(ErrorCode::InvalidArgument, "x and y must be nonzero");
  std::vector<SolutionTriple> out;
  const unsigned long abs_x = static_cast<unsigned long>(std::labs(x));
  Integer v;
  for (unsigned n = 0; n <= powers.n_max(); ++n) {
    const Integer& p = powers[n];
    const bool large = mpz_cmp_ui(p.get_mpz_t(), abs_x + 1) > 0;
    if (large) {
      // |y p| > |x| + 1, so v has the sign of y and v != 1.
      if (y < 0) continue;
      const long r = ((y % 15) * static_cast<long>(powers.residue15(n)) - x % 15) % 15;
      const long m = (r + 15) % 15;
      if (m % 3 != 0 && m % 5 != 0) continue;
    }
    mpz_mul_si(v.get_mpz_t(), p.get_mpz_t(), y);
    v -= x;
    if (v < 1) continue;
    unsigned long i = mpz_remove(v.get_mpz_t(), v.get_mpz_t(), Integer(3).get_mpz_t());
    unsigned long j = mpz_remove(v.get_mpz_t(), v.get_mpz_t(), Integer(5).get_mpz_t());
    if (v == 1) out.push_back({n, i, j});
  }
  return out;
}

std::vector<SolutionTriple> count_solutions(long x, long y, unsigned n_max) {
  return count_solutions(x, y, FermatPowers(n_max));
}

SweepResult sweep(const SweepRange& range, unsigned n_max, unsigned threads) {
  if (range.x_min > range.x_max || range.y_min > range.y_max) fail(ErrorCode::InvalidArgument, "empty range");
  std::vector<long> xs, ys;
  for (long x = range.x_min; x <= range.x_max; ++x)
    if (x != 0) xs.push_back(x);
  for (long y = range.y_min; y <= range.y_max; ++y)
    if (y != 0) ys.push_back(y);
  if (xs.empty() || ys.empty()) fail(ErrorCode::InvalidArgument, "range contains no nonzero values");

  const FermatPowers powers(n_max);
  // per row: count with n >= 0 and with n >= 1
  std::vector<std::vector<std::pair<unsigned, unsigned>>> counts(xs.size());
  parallel_for(
      xs.size(),
      [&](size_t r) {
        counts[r].reserve(ys.size());
        for (long y : ys) {
          auto sols = count_solutions(xs[r], y, powers);
          unsigned positive = 0;
          for (const auto& s : sols) positive += s.n >= 1 ? 1 : 0;
          counts[r].emplace_back(static_cast<unsigned>(sols.size()), positive);
        }
      },
      threads);

  SweepResult out;
  bool first = true;
  for (size_t r = 0; r < xs.size(); ++r) {
    for (size_t c = 0; c < ys.size(); ++c) {
      auto [all, positive] = counts[r][c];
      ++out.pairs;
      ++out.histogram[all];
      if (first || all > out.max_count) {
        out.max_count = all;
        out.argmax = {xs[r], ys[c]};
      }
      if (first || positive > out.max_count_positive_n) {
        out.max_count_positive_n = positive;
        out.argmax_positive_n = {xs[r], ys[c]};
      }
      first = false;
    }
  }
  out.bound_holds = out.max_count <= kFermatBound;
  return out;
}

}  // namespace arithdyn
