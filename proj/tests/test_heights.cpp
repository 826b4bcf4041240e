#include <doctest.h>

#include "heights.hpp"
#include "oracles.hpp"

using namespace arithdyn;

namespace {

RationalMap random_map(std::mt19937_64& rng, int d, long coeff) {
  for (;;) {
    std::vector<Rational> num(d + 1), den(d + 1);
    for (auto& c : num) c = static_cast<long>(rng() % (2 * coeff + 1)) - coeff;
    for (auto& c : den) c = static_cast<long>(rng() % (2 * coeff + 1)) - coeff;
    if (num[d] == 0 && den[d] == 0) continue;
    try {
      return RationalMap::build(num, den);
    } catch (const Error&) {
    }
  }
}

}  // namespace

TEST_SUITE("heights") {
  TEST_CASE("weil_height examples") {
    CHECK(weil_height(ProjPoint(2, 3)).exact == LogNumber(Integer(3)));
    CHECK(weil_height(ProjPoint::infinity()).exact.is_zero());
    CHECK(weil_height(ProjPoint(-45, 8)).exact == LogNumber(Integer(45)));
    CHECK(weil_height(Rational(0)).exact.is_zero());
  }

  TEST_CASE("map_height examples") {
    CHECK(map_height(RationalMap::build_int({0, 0, 1}, {1})).exact.is_zero());
    CHECK(map_height(RationalMap::build_int({1, 0, 3}, {0, 2})).exact == LogNumber(Integer(3)));
    CHECK(map_height(RationalMap::build({0, 0, Rational(1, 5)}, {1})).exact == LogNumber(Integer(5)));
  }

  TEST_CASE("height_sum_check examples") {
    const auto one = height_sum_check(1, 1);
    CHECK(one.sum.is_zero());  // h(2) = log 2 exactly cancels the log 2
    CHECK(one.difference == LogNumber(Integer(2)));
    CHECK(one.product.is_zero());
    const auto s = height_sum_check(2, 3);
    CHECK(s.sum == LogNumber(Rational(12, 5)));
    const auto h = height_sum_check(Rational(1, 2), Rational(1, 2));
    CHECK(h.sum == LogNumber(Integer(8)));
    CHECK(h.product.is_zero());
  }

  TEST_CASE("h(x^n) = n h(x) and h(1/x) = h(x)") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 300; ++i) {
      const Rational x = oracle::random_rational(rng, 60);
      CHECK(weil_height(Rational(1 / x)).exact == weil_height(x).exact);
      const long n = 1 + static_cast<long>(rng() % 50);
      CHECK(weil_height(pow(x, n)).exact == weil_height(x).exact.times(n));
    }
  }

  TEST_CASE("weil_height agrees with a floating oracle") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
      const Rational x = oracle::random_rational(rng, 200);
      CHECK(weil_height(x).value == doctest::Approx(oracle::weil_height(x)).epsilon(1e-12));
    }
  }

  TEST_CASE("height inequalities on random pairs") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 10000; ++i) {
      const Rational x = oracle::random_rational(rng, 64, true), y = oracle::random_rational(rng, 64, true);
      const auto s = height_sum_check(x, y);
      CHECK(s.sum.sign() >= 0);
      CHECK(s.difference.sign() >= 0);
      CHECK(s.product.sign() >= 0);
    }
  }

  TEST_CASE("height_drop_constants examples") {
    const auto sq = height_drop_constants(RationalMap::build_int({0, 0, 1}, {1}));
    CHECK(sq.e_low.sign() >= 0);
    const auto c = height_drop_constants(RationalMap::build_int({1, 0, 1}, {1}));
    CHECK(c.e_up == LogNumber(Integer(6)));
    CHECK(std::isfinite(c.e_low_value()));
  }

  TEST_CASE("drop constants validate on (z^2 - 1)/z and random maps") {
    std::mt19937_64 rng(7);
    std::vector<RationalMap> maps{RationalMap::build_int({-1, 0, 1}, {0, 1})};
    for (int i = 0; i < 6; ++i) maps.push_back(random_map(rng, 2 + i % 3, 20));
    for (const auto& phi : maps) {
      const auto k = height_drop_constants(phi);
      const long d = phi.degree();
      const int points = &phi == &maps.front() ? 10000 : 1500;
      for (int i = 0; i < points; ++i) {
        const ProjPoint x = ProjPoint::from_rational(oracle::random_rational(rng, 24, true));
        const LogNumber hx = weil_height(x).exact, hy = weil_height(phi.apply(x)).exact;
        CHECK(hx.times(d) - k.e_low <= hy);
        CHECK(hy <= hx.times(d) + k.e_up.times(d));
      }
    }
  }

  TEST_CASE("canonical height examples") {
    const auto z2 = RationalMap::build_int({0, 0, 1}, {1});
    const auto a = canonical_height(z2, ProjPoint(2, 1));
    CHECK(a.contains(std::log(2.0)));
    CHECK(a.width() <= 2e-9);

    const auto c = canonical_height(RationalMap::build_int({-1, 0, 1}, {1}), ProjPoint(0, 1));
    CHECK(c.contains(0.0));
    CHECK(c.lo >= 0.0);

    CanonicalHeightOptions opt;
    opt.tolerance = 1e-6;
    const auto b = canonical_height(RationalMap::build_int({1, 0, 1}, {1}), ProjPoint(0, 1), opt);
    CHECK(b.contains(oracle::hhat_z2_plus_1_at_0()));
    CHECK(b.width() <= 2e-6);
    CHECK(b.mid() == doctest::Approx(0.20368).epsilon(1e-4));
  }

  TEST_CASE("canonical height of z^2 + 1 at 0 matches the log-space recurrence tightly") {
    const auto b = canonical_height(RationalMap::build_int({1, 0, 1}, {1}), ProjPoint(0, 1));
    CHECK(b.contains(oracle::hhat_z2_plus_1_at_0()));
    CHECK(b.width() <= 2e-9);
  }

  TEST_CASE("power maps: hhat equals the Weil height") {
    std::mt19937_64 rng(8);
    for (int d : {2, 3}) {
      const auto phi = d == 2 ? RationalMap::build_int({0, 0, 1}, {1}) : RationalMap::build_int({0, 0, 0, 1}, {1});
      for (int i = 0; i < 20; ++i) {
        const Rational x = oracle::random_rational(rng, 30, true);
        const auto c = canonical_height(phi, ProjPoint::from_rational(x));
        CHECK(c.contains(weil_height(x).value));
      }
    }
  }

  TEST_CASE("functional equation hhat(phi x) = d hhat(x)") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 12; ++i) {
      const RationalMap phi = random_map(rng, 2 + i % 2, 6);
      const ProjPoint x = ProjPoint::from_rational(oracle::random_rational(rng, 10, true));
      CanonicalHeightOptions opt;
      opt.tolerance = 1e-7;
      const auto m2 = canonical_height(phi, x, opt);
      const auto m1 = canonical_height(phi, phi.apply(x), opt);
      const double d = phi.degree();
      CHECK(std::abs(m1.mid() - d * m2.mid()) <= 2 * (m1.width() + d * m2.width()) + 1e-15);
    }
  }

  TEST_CASE("exact_only mode stops at the bit cap") {
    CanonicalHeightOptions opt;
    opt.exact_only = true;
    opt.bit_cap = 4096;
    CHECK_THROWS_AS(canonical_height(RationalMap::build_int({1, 0, 1}, {1}), ProjPoint(3, 1), opt), Error);
  }

  TEST_CASE("iteration cap") {
    CanonicalHeightOptions opt;
    opt.max_iterations = 3;
    try {
      canonical_height(RationalMap::build_int({1, 0, 1}, {1}), ProjPoint(0, 1), opt);
      FAIL("expected an iteration cap error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IterationCap);
    }
  }
}
