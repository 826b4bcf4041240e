// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance <path-to-cli> [criterion numbers...]
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <string>

#include "bounds.hpp"
#include "fermatlab.hpp"
#include "heights.hpp"
#include "integrality.hpp"
#include "oracles.hpp"
#include "padic.hpp"
#include "ratmap.hpp"

using namespace arithdyn;
using Json = nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

std::string cli_path;

ProjPoint rng_point(std::mt19937_64& rng) { return ProjPoint::from_rational(oracle::random_rational(rng, 24, true)); }

// Seeds per worker index so parallel sweeps stay reproducible.
std::mt19937_64 worker_rng(std::uint64_t base, size_t i) { return std::mt19937_64(base * 1000003 + i); }

Outcome product_formula() {
  constexpr size_t kCount = 100000;
  std::atomic<size_t> violations{0};
  parallel_for(kCount, [&](size_t i) {
    auto rng = worker_rng(1, i);
    // parts of random bit length up to 64
    const Rational x = oracle::random_rational(rng, 64);
    Rational prod = abs_at(x, Place::archimedean());
    std::set<std::string> seen;
    for (const Integer& part : {Integer(abs(x.get_num())), Integer(x.get_den())}) {
      for (const auto& pp : factor_u64(part.get_ui())) {
        if (seen.insert(pp.prime.get_str()).second) prod *= abs_at(x, Place::finite(pp.prime));
      }
    }
    if (prod != 1) ++violations;
  });
  return {violations == 0, std::to_string(kCount) + " rationals, " + std::to_string(violations.load()) + " nonzero sums"};
}

Outcome height_inequalities() {
  constexpr size_t kCount = 10000;
  std::atomic<size_t> violations{0};
  parallel_for(kCount, [&](size_t i) {
    auto rng = worker_rng(2, i);
    const Rational x = oracle::random_rational(rng, 64, true), y = oracle::random_rational(rng, 64, true);
    const auto s = height_sum_check(x, y);
    if (s.sum.sign() < 0 || s.difference.sign() < 0 || s.product.sign() < 0) ++violations;
  });
  return {violations == 0, std::to_string(kCount) + " pairs, " + std::to_string(violations.load()) + " violations"};
}

Outcome canonical_power_maps() {
  const RationalMap z2 = RationalMap::build_int({0, 0, 1}, {1});
  constexpr size_t kCount = 100;
  std::atomic<size_t> bad{0};
  std::mutex mu;
  double widest = 0;
  parallel_for(kCount, [&](size_t i) {
    auto rng = worker_rng(3, i);
    const Rational x = oracle::random_rational(rng, 64, true);
    CanonicalHeightOptions opt;
    opt.tolerance = 4e-10;  // width <= 2 tol
    const auto c = canonical_height(z2, ProjPoint::from_rational(x), opt);
    // exact containment: lo <= log H <= hi, decided by interval evaluation of log H
    const Interval h = weil_height(x).exact.enclose(256);
    const bool inside = BigFloat(c.lo, 256) <= h.lo() && h.hi() <= BigFloat(c.hi, 256);
    if (!inside || c.width() > 1e-9) ++bad;
    std::lock_guard<std::mutex> lock(mu);
    widest = std::max(widest, c.width());
  });
  const auto periodic = canonical_height(RationalMap::build_int({-1, 0, 1}, {1}), ProjPoint(0, 1));
  const bool zero_ok = periodic.contains(0.0);
  std::ostringstream os;
  os << kCount << " points, " << bad << " failures, widest " << widest << "; z^2-1 at 0: [" << periodic.lo << ", "
     << periodic.hi << "]";
  return {bad == 0 && zero_ok, os.str()};
}

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

Outcome drop_constants() {
  constexpr size_t kMaps = 20, kPoints = 10000;
  std::atomic<size_t> violations{0};
  std::mt19937_64 rng(4);
  for (size_t m = 0; m < kMaps; ++m) {
    const RationalMap phi = random_map(rng, 2 + static_cast<int>(m % 3), 50);
    const auto k = height_drop_constants(phi);
    const long d = phi.degree();
    parallel_for(kPoints, [&](size_t i) {
      auto r = worker_rng(40 + m, i);
      const ProjPoint x = rng_point(r);
      const LogNumber hx = weil_height(x).exact, hy = weil_height(phi.apply(x)).exact;
      if (hy < hx.times(d) - k.e_low || hx.times(d) + k.e_up.times(d) < hy) ++violations;
    });
  }
  return {violations == 0, std::to_string(kMaps) + " maps x " + std::to_string(kPoints) + " points, " +
                               std::to_string(violations.load()) + " violations"};
}

Outcome lte_oracle() {
  constexpr size_t kCount = 10000;
  std::atomic<size_t> mismatches{0};
  const std::vector<long> primes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  parallel_for(kCount, [&](size_t i) {
    auto rng = worker_rng(5, i);
    for (;;) {
      const long p = primes[rng() % primes.size()];
      const long b = 1 + static_cast<long>(rng() % 1000000);
      const long a = b + p * (static_cast<long>(rng() % (2000000 / p)) - static_cast<long>(1000000 / p));
      if (a <= 0 || a == b || a % p == 0) continue;
      const unsigned long n = 1 + rng() % 200;
      if (lte_valuation(Integer(a), Integer(b), Integer(n), Integer(p)) != oracle::lte_brute(a, b, n, p)) ++mismatches;
      return;
    }
  });
  return {mismatches == 0, std::to_string(kCount) + " instances, " + std::to_string(mismatches.load()) + " mismatches"};
}

Outcome padic_orbits() {
  constexpr size_t kCases = 1000;
  std::atomic<size_t> mismatches{0}, errors{0};
  parallel_for(kCases, [&](size_t i) {
    auto rng = worker_rng(6, i);
    for (;;) {
      const int d = 2 + static_cast<int>(rng() % 2);
      std::vector<Integer> f(d + 1), g(d + 1, Integer(0));
      for (auto& c : f) c = static_cast<long>(rng() % 201) - 100;
      if (rng() % 2) {
        for (auto& c : g) c = static_cast<long>(rng() % 201) - 100;
      } else {
        g[0] = 1 + static_cast<long>(rng() % 100);  // polynomial maps too
      }
      if (f[d] == 0 && g[d] == 0) continue;
      std::optional<RationalMap> phi;
      try {
        phi = RationalMap::build(std::vector<Rational>(f.begin(), f.end()), std::vector<Rational>(g.begin(), g.end()));
      } catch (const Error&) {
        continue;
      }
      const Rational alpha = oracle::frac(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 6));
      const Rational beta = oracle::frac(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 6));
      const Integer p = std::vector<long>{2, 3, 5, 7, 11}[rng() % 5];
      const unsigned long n = rng() % 13;
      const auto [x0, x1] = oracle::iterate_projective(f, g, alpha.get_num(), alpha.get_den(), n);
      const Integer cross = x0 * beta.get_den() - x1 * beta.get_num();
      if (x1 == 0 || cross == 0) continue;  // infinity or beta itself: nothing to compare
      const long expected = oracle::valuation(cross, p) - oracle::valuation(x1, p) - oracle::valuation(Integer(beta.get_den()), p);
      try {
        const long got = orbit_valuation(*phi, ProjPoint::from_rational(alpha), beta, p, n).value;
        if (got != expected) ++mismatches;
      } catch (const Error& e) {
        if (errors++ < 3) std::fprintf(stderr, "criterion 6: %s\n", e.what());
      }
      return;
    }
  });
  return {mismatches == 0 && errors == 0, std::to_string(kCases) + " cases, " + std::to_string(mismatches.load()) +
                                              " mismatches, " + std::to_string(errors.load()) + " errors"};
}

Outcome scan_ground_truth() {
  const auto r = scan_orbit(RationalMap::build_int({0, 0, 1}, {1}), ProjPoint(2, 1), ProjPoint(1, 1),
                            PlaceSet::parse("inf,3,5"), {10});
  std::string got = "{";
  for (size_t i = 0; i < r.integral_indices.size(); ++i) got += (i ? "," : "") + std::to_string(r.integral_indices[i]);
  got += "}";
  return {r.integral_indices == std::vector<unsigned long>{0, 1, 2} && !r.truncated, "integral indices " + got};
}

Outcome fermat() {
  const SweepResult s = sweep({-200, 200, -200, 200}, 16);
  const auto single = count_solutions(-1, 1, 16);
  const auto ones = count_solutions(1, 1, 16);
  const bool single_ok = single == std::vector<SolutionTriple>{{0, 1, 0}, {1, 0, 1}};
  std::ostringstream os;
  os << s.pairs << " pairs, observed max " << s.max_count << " at (" << s.argmax.first << "," << s.argmax.second
     << "), max with n>=1 " << s.max_count_positive_n << "; (-1,1) -> " << single.size() << ", (1,1) -> " << ones.size();
  return {s.max_count <= kFermatBound && single_ok && ones.size() == 3, os.str()};
}

Outcome explicit_values() {
  bool ok = bound_z2_explicit(2) == 68.0 && explicit_z2_params(2).final_threshold == 56.0;
  size_t checked = 0;
  for (long d = 2; d <= 5; ++d) {
    for (long s = 1; s <= 64; ++s) {
      const long n = preimage_level_N(d, s);
      Integer target = Integer(56 * s) << static_cast<mp_bitcnt_t>(2 * d - 2), lo, hi;
      mpz_ui_pow_ui(lo.get_mpz_t(), d, n - 1);
      mpz_ui_pow_ui(hi.get_mpz_t(), d, n);
      ok = ok && lo <= target && target < hi;
      ++checked;
    }
  }
  return {ok, "bound_z2_explicit(2) = " + std::to_string(bound_z2_explicit(2)) + ", final_threshold(2) = " +
                  std::to_string(explicit_z2_params(2).final_threshold) + ", " + std::to_string(checked) +
                  " preimage levels checked"};
}

Outcome roth() {
  const auto c = roth_constants(2);
  bool ok = std::abs(c.c1 / 4.0730e9 - 1) < 1e-3 && std::isfinite(c.log_c2);
  double prev = c.log_c2;
  for (long r = 3; r <= 100; ++r) {
    const double next = roth_constants(r).log_c2;
    ok = ok && std::isfinite(next) && next > prev;
    prev = next;
  }
  std::ostringstream os;
  os << "c1(2) = " << c.c1 << ", log_c2(2) = " << c.log_c2;
  return {ok, os.str()};
}

Outcome lipschitz_finite() {
  constexpr size_t kMaps = 10, kPairs = 10000;
  std::atomic<size_t> violations{0};
  std::mt19937_64 rng(11);
  for (size_t m = 0; m < kMaps; ++m) {
    const RationalMap phi = random_map(rng, 2 + static_cast<int>(m % 3), 20);
    for (long p : {2, 3, 5, 7}) {
      const Place v = Place::finite(p);
      const Rational c = *lipschitz_constant(phi, v).exact;
      parallel_for(kPairs, [&](size_t i) {
        auto r = worker_rng(110 + m * 10 + p, i);
        const ProjPoint x = rng_point(r), y = rng_point(r);
        if (*chordal(phi.apply(x), phi.apply(y), v).exact > c * *chordal(x, y, v).exact) ++violations;
      });
    }
  }
  // contraction near the critical point 0 of z^2, archimedean place
  const RationalMap z2 = RationalMap::build_int({0, 0, 1}, {1});
  const Place inf = Place::archimedean();
  const double C = lipschitz_constant(z2, inf).value;
  size_t sampled = 0, contraction_failures = 0;
  std::mt19937_64 r(12);
  for (int i = 0; i < 10000; ++i) {
    const ProjPoint x = ProjPoint::from_rational(oracle::random_rational(r, 20, true));
    const double rho = chordal(x, ProjPoint(0, 1), inf).to_double();
    if (rho > 1 / (8 * C)) continue;
    ++sampled;
    if (chordal(z2.apply(x), ProjPoint(0, 1), inf).to_double() > 0.5 * C * C * rho * rho) ++contraction_failures;
  }
  return {violations == 0 && contraction_failures == 0 && sampled > 0,
          std::to_string(kMaps) + " maps x " + std::to_string(kPairs) + " pairs x 4 primes, " +
              std::to_string(violations.load()) + " violations; contraction " + std::to_string(contraction_failures) +
              " failures on " + std::to_string(sampled) + " samples"};
}

Outcome distribution_gap() {
  constexpr size_t kCount = 1000;
  std::mutex mu;
  double worst = 1e300;
  std::atomic<size_t> skipped{0};
  parallel_for(kCount, [&](size_t i) {
    auto rng = worker_rng(12, i);
    for (;;) {
      const Rational x = oracle::random_rational(rng, 16, true), y = oracle::random_rational(rng, 16);
      const unsigned n = static_cast<unsigned>(rng() % 7);
      try {
        const double s = distribution_gap_check(x, y, n, 1e-9).slack;
        std::lock_guard<std::mutex> lock(mu);
        worst = std::min(worst, s);
        return;
      } catch (const Error&) {
        ++skipped;
      }
    }
  });
  std::ostringstream os;
  os << kCount << " instances, min slack " << worst << ", redrawn " << skipped;
  return {worst >= -1e-9, os.str()};
}

Outcome adversarial() {
  std::ostringstream os;
  bool ok = true;
  for (unsigned m = 1; m <= 8; ++m) {
    const auto inst = adversarial_family(m);
    const auto r = scan_orbit(inst.phi, inst.alpha, inst.beta, inst.s, {m});
    unsigned long count = 0;
    for (auto n : r.integral_indices) count += n >= 1 && n <= m;
    ok = ok && count >= m && !r.truncated;
    os << (m > 1 ? " " : "") << "m=" << m << ":" << count;
  }
  return {ok, os.str()};
}

std::string run_cli(const std::string& args) {
  const std::string cmd = "'" + cli_path + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "";
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  pclose(pipe);
  return out;
}

std::string strip_metadata(const std::string& text) {
  if (text.rfind("#", 0) == 0) return text;  // CSV carries no metadata
  Json j = Json::parse(text);
  j.erase("metadata");
  return j.dump();
}

Outcome determinism() {
  if (cli_path.empty()) return {false, "no CLI path given"};
  const std::string z2 = R"('{"num":["0","0","1"],"den":["1"]}')";
  const std::string zp1 = R"('{"num":["1","0","1"],"den":["1"]}')";
  const std::vector<std::string> runs{
      "scan --map " + z2 + " --alpha 2 --beta 1 --places inf,3,5 --seed 7",
      "scan --map " + z2 + " --alpha 2 --beta 1 --format csv --seed 7",
      "quasi-scan --map " + z2 + " --alpha 2 --beta 1 --eps 1/2 --seed 7",
      "bound --theorem z2 --s 3 --seed 7",
      "canheight --map " + zp1 + " --point 0 --tol 1e-6 --seed 7",
      "height --point -45/8 --map " + zp1 + " --seed 7",
      "lte --a 4 --b 1 --n 3 --p 3 --seed 7",
      "orbit-valuation --map " + z2 + " --alpha 2 --beta 1 --p 3 --n 2 --seed 7",
      "fermat-sweep --x-min -30 --x-max 30 --y-min -30 --y-max 30 --n-max 8 --seed 7",
      "adversarial --m 5 --seed 7",
      "lipschitz --map " + zp1 + " --place inf --seed 7",
      "params-z2 --s 2 --seed 7",
  };
  size_t identical = 0;
  std::string failed;
  for (const auto& args : runs) {
    const std::string a = run_cli(args), b = run_cli(args);
    bool same = false;
    try {
      same = !a.empty() && strip_metadata(a) == strip_metadata(b);
    } catch (const std::exception&) {
    }
    if (same) ++identical;
    else failed += " [" + args.substr(0, args.find(' ')) + "]";
  }
  return {identical == runs.size(),
          std::to_string(identical) + "/" + std::to_string(runs.size()) + " commands byte-identical" + failed};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  std::set<int> only;
  for (int i = 2; i < argc; ++i) only.insert(std::atoi(argv[i]));

  const std::vector<Criterion> criteria{
      {1, "product formula", 10, product_formula},
      {2, "height inequalities", 5, height_inequalities},
      {3, "canonical height of power maps", 10, canonical_power_maps},
      {4, "per-map height-drop constants", 60, drop_constants},
      {5, "LTE oracle equivalence", 30, lte_oracle},
      {6, "capped p-adic orbit valuations", 60, padic_orbits},
      {7, "orbit scan ground truth", 1, scan_ground_truth},
      {8, "Fermat sweep", 600, fermat},
      {9, "explicit bound values", 1, explicit_values},
      {10, "Roth constants", 1, roth},
      {11, "Lipschitz property at finite places", 60, lipschitz_finite},
      {12, "distribution gap", 30, distribution_gap},
      {13, "adversarial family", 60, adversarial},
      {14, "CLI determinism", 0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    const bool pass = out.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s; %.2fs%s\n", pass ? "PASS" : "FAIL", c.id, c.title, out.detail.c_str(), secs,
                in_time ? "" : " (over time limit)");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
