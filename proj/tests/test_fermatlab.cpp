#include <doctest.h>

#include "fermatlab.hpp"
#include "oracles.hpp"

using namespace arithdyn;

namespace {

// Oracle: v is 3-5-smooth iff v divides 15^bits(v); exponents by repeated division.
std::vector<SolutionTriple> enumerate(long x, long y, unsigned n_max) {
  std::vector<SolutionTriple> out;
  for (unsigned n = 0; n <= n_max; ++n) {
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), 2, 1UL << n);
    const Integer v = power * y - x;
    if (v < 1) continue;
    Integer r;
    const Integer k = static_cast<unsigned long>(mpz_sizeinbase(v.get_mpz_t(), 2));
    mpz_powm(r.get_mpz_t(), Integer(15).get_mpz_t(), k.get_mpz_t(), v.get_mpz_t());
    if (r != 0) continue;
    out.push_back({n, static_cast<unsigned long>(oracle::valuation(v, 3)),
                   static_cast<unsigned long>(oracle::valuation(v, 5))});
  }
  return out;
}

}  // namespace

TEST_SUITE("fermatlab") {
  TEST_CASE("strip_smooth") {
    const auto a = strip_smooth(45, {3, 5});
    CHECK(a.exponents == std::vector<long>{2, 1});
    CHECK(a.residual == 1);
    const auto b = strip_smooth(255, {3, 5});
    CHECK(b.exponents == std::vector<long>{1, 1});
    CHECK(b.residual == 17);
    const auto c = strip_smooth(1, {3, 5});
    CHECK(c.exponents == std::vector<long>{0, 0});
    CHECK(c.residual == 1);
    CHECK_THROWS(strip_smooth(0, {3}));
  }

  TEST_CASE("count_solutions examples") {
    CHECK(count_solutions(-1, 1, 16) == std::vector<SolutionTriple>{{0, 1, 0}, {1, 0, 1}});
    CHECK(count_solutions(1, 1, 16) == std::vector<SolutionTriple>{{0, 0, 0}, {1, 1, 0}, {2, 1, 1}});
    CHECK(count_solutions(7, 2, 16) == enumerate(7, 2, 16));
    CHECK_THROWS(count_solutions(0, 1, 4));
    CHECK_THROWS(count_solutions(1, 1, kFermatMaxN + 1));
  }

  TEST_CASE("count_solutions agrees with the enumeration oracle") {
    std::mt19937_64 rng(61);
    for (int k = 0; k < 400; ++k) {
      long x = static_cast<long>(rng() % 4001) - 2000;
      long y = static_cast<long>(rng() % 81) - 40;
      if (x == 0 || y == 0) continue;
      CHECK(count_solutions(x, y, 5) == enumerate(x, y, 5));
    }
  }

  TEST_CASE("solutions re-validate and counts grow with n_max") {
    std::mt19937_64 rng(62);
    for (int k = 0; k < 200; ++k) {
      long x = static_cast<long>(rng() % 401) - 200;
      long y = static_cast<long>(rng() % 401) - 200;
      if (x == 0 || y == 0) continue;
      size_t prev = 0;
      for (unsigned n_max = 0; n_max <= 10; ++n_max) {
        const auto sols = count_solutions(x, y, n_max);
        CHECK(sols.size() >= prev);
        prev = sols.size();
        for (const auto& s : sols) {
          Integer lhs, p3, p5;
          mpz_ui_pow_ui(lhs.get_mpz_t(), 2, 1UL << s.n);
          mpz_ui_pow_ui(p3.get_mpz_t(), 3, s.i);
          mpz_ui_pow_ui(p5.get_mpz_t(), 5, s.j);
          CHECK(lhs * y == x + p3 * p5);
        }
      }
    }
  }

  TEST_CASE("sweep") {
    const auto one = sweep({-1, -1, 1, 1}, 12);
    CHECK(one.max_count == 2);
    CHECK(one.pairs == 1);
    CHECK(one.argmax == std::pair<long, long>{-1, 1});

    const auto grid = sweep({}, 12);
    CHECK(grid.pairs == 100 * 100);
    CHECK(grid.max_count <= kFermatBound);
    CHECK(grid.bound_holds);
    unsigned long total = 0;
    for (const auto& [count, pairs] : grid.histogram) total += pairs;
    CHECK(total == grid.pairs);
    CHECK(grid.max_count_positive_n <= grid.max_count);

    // deterministic regardless of the thread count
    const auto serial = sweep({-20, 20, -20, 20}, 8, 1);
    const auto parallel = sweep({-20, 20, -20, 20}, 8, 4);
    CHECK(serial.argmax == parallel.argmax);
    CHECK(serial.histogram == parallel.histogram);

    CHECK_THROWS(sweep({0, 0, 1, 1}, 4));
    CHECK_THROWS(sweep({5, 1, 1, 1}, 4));
  }
}
