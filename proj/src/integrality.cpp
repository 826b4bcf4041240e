#include "integrality.hpp"

#include <algorithm>
#include <sstream>

namespace arithdyn {

PlaceSet PlaceSet::from_primes(const std::vector<Integer>& primes) {
  PlaceSet s;
  for (const auto& p : primes) {
    if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "place set entry is not prime: " + p.get_str());
    s.primes_.push_back(p);
  }
  std::sort(s.primes_.begin(), s.primes_.end());
  if (std::adjacent_find(s.primes_.begin(), s.primes_.end()) != s.primes_.end()) {
    fail(ErrorCode::InvalidArgument, "place set lists a prime twice");
  }
  return s;
}

PlaceSet PlaceSet::parse(const std::string& text) {
  std::vector<Integer> primes;
  bool has_inf = false;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) fail(ErrorCode::InvalidArgument, "empty entry in place set '" + text + "'");
    Place v = Place::parse(item);
    if (v.is_archimedean()) {
      if (has_inf) fail(ErrorCode::InvalidArgument, "place set lists inf twice");
      has_inf = true;
    } else {
      primes.push_back(v.prime());
    }
  }
  if (!has_inf) fail(ErrorCode::InvalidArgument, "place set must contain the archimedean place 'inf'");
  return from_primes(primes);
}

bool PlaceSet::contains(const Integer& p) const { return std::binary_search(primes_.begin(), primes_.end(), p); }

std::vector<Place> PlaceSet::places() const {
  std::vector<Place> out{Place::archimedean()};
  for (const auto& p : primes_) out.push_back(Place::finite(p));
  return out;
}

std::string PlaceSet::to_string() const {
  std::string out = "inf";
  for (const auto& p : primes_) out += "," + p.get_str();
  return out;
}

namespace {

Integer strip_s(Integer x, const PlaceSet& s) {
  x = abs_value(x);
  for (const auto& p : s.primes()) remove_factor(x, p);
  return x;
}

}  // namespace

IntegralityVerdict s_integrality_of_cross(const Integer& cross, const PlaceSet& s) {
  if (cross == 0) fail(ErrorCode::Domain, "points coincide; integrality relative to itself is undefined");
  Integer rest = strip_s(cross, s);
  IntegralityVerdict out;
  out.integral = rest == 1;
  if (out.integral) return out;

  if (rest.fits_ulong_p() || bit_length(rest) <= kWitnessPrimalityBits) {
    PartialFactorization f = partial_factor(rest);
    for (auto& pp : f.primes) out.witnesses.push_back({pp.prime, true});
    if (f.cofactor != 1) out.witnesses.push_back({f.cofactor, false});
    return out;
  }
  // Large residual: pull out primes below 10^6 only.
  Integer smooth;
  mpz_gcd(smooth.get_mpz_t(), rest.get_mpz_t(), small_primorial().get_mpz_t());
  for (auto p : small_primes()) {
    if (smooth == 1) break;
    if (mpz_divisible_ui_p(smooth.get_mpz_t(), p)) {
      mpz_divexact_ui(smooth.get_mpz_t(), smooth.get_mpz_t(), p);
      Integer prime(static_cast<unsigned long>(p));
      remove_factor(rest, prime);
      out.witnesses.push_back({prime, true});
    }
  }
  if (rest != 1) out.witnesses.push_back({rest, false});
  return out;
}

IntegralityVerdict is_s_integral(const ProjPoint& x, const ProjPoint& y, const PlaceSet& s) {
  return s_integrality_of_cross(cross_product(x, y), s);
}

bool is_s_unit(const Rational& x, const PlaceSet& s) {
  if (x == 0) fail(ErrorCode::Domain, "0 is not an S-unit candidate");
  return strip_s(x.get_num(), s) == 1 && strip_s(x.get_den(), s) == 1;
}

bool is_quasi_integral(const Rational& x, const PlaceSet& s, const Rational& eps) {
  if (x == 0) fail(ErrorCode::Domain, "quasi-integrality of 0 is undefined");
  if (eps < 0 || eps > 1) fail(ErrorCode::InvalidArgument, "epsilon must lie in [0, 1]");
  LogNumber local = LogNumber::zero();
  for (const auto& v : s.places()) local += log_plus_abs(x, v);
  return compare_scaled(1, local, eps, weil_height(x).exact) >= 0;
}

namespace {

struct OrbitPrefix {
  std::vector<ProjPoint> points;  // phi^n(alpha) for n = 0..points.size()-1
  bool truncated = false;
  long truncated_at = -1;
};

OrbitPrefix orbit_prefix(const RationalMap& phi, const ProjPoint& alpha, const ScanOptions& opt) {
  OrbitPrefix out;
  if (alpha.max_bits() > opt.bit_cap) {
    out.truncated = true;
    out.truncated_at = 0;
    return out;
  }
  Orbit orbit(phi, alpha, opt.bit_cap);
  out.points.push_back(alpha);
  while (orbit.index() < opt.n_max) {
    try {
      out.points.push_back(orbit.advance());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BitCapExceeded) throw;
      out.truncated = true;
      out.truncated_at = e.index();
      break;
    }
  }
  return out;
}

}  // namespace

OrbitScanReport scan_orbit(const RationalMap& phi, const ProjPoint& alpha, const ProjPoint& beta, const PlaceSet& s,
                           const ScanOptions& opt) {
  OrbitScanReport report;
  report.first_index = alpha == beta ? 1 : 0;
  OrbitPrefix orbit = orbit_prefix(phi, alpha, opt);
  report.truncated = orbit.truncated;
  report.truncated_at = orbit.truncated_at;

  const size_t first = report.first_index;
  const size_t count = orbit.points.size() > first ? orbit.points.size() - first : 0;
  report.entries.resize(count);
  parallel_for(
      count,
      [&](size_t i) {
        const size_t n = first + i;
        OrbitScanEntry& e = report.entries[i];
        e.n = n;
        e.point = orbit.points[n];
        e.height = weil_height(e.point);
        e.equals_beta = e.point == beta;
        e.at_infinity = e.point.is_infinity();
        if (e.equals_beta || e.at_infinity) return;
        IntegralityVerdict v = is_s_integral(e.point, beta, s);
        e.integral = v.integral;
        e.witnesses = std::move(v.witnesses);
      },
      opt.threads);

  for (const auto& e : report.entries) {
    if (e.equals_beta || e.at_infinity) {
      report.excluded.push_back(e.n);
    } else if (e.integral) {
      report.integral_indices.push_back(e.n);
    }
  }
  return report;
}

QuasiScanReport scan_quasi(const RationalMap& phi, const ProjPoint& alpha, const ProjPoint& beta, const PlaceSet& s,
                           const Rational& eps, const ScanOptions& opt) {
  if (beta.is_infinity()) fail(ErrorCode::InvalidArgument, "quasi-integrality scan needs a finite beta");
  if (eps < 0 || eps > 1) fail(ErrorCode::InvalidArgument, "epsilon must lie in [0, 1]");
  const Rational b = beta.affine();
  OrbitPrefix orbit = orbit_prefix(phi, alpha, opt);

  QuasiScanReport report;
  report.truncated = orbit.truncated;
  report.truncated_at = orbit.truncated_at;
  report.checked = orbit.points.size();
  std::vector<char> verdict(orbit.points.size(), 0), skipped(orbit.points.size(), 0);
  parallel_for(
      orbit.points.size(),
      [&](size_t n) {
        const ProjPoint& x = orbit.points[n];
        if (x.is_infinity() || x == beta) {
          skipped[n] = 1;
          return;
        }
        Rational inv = 1 / (x.affine() - b);
        verdict[n] = is_quasi_integral(inv, s, eps) ? 1 : 0;
      },
      opt.threads);
  for (size_t n = 0; n < orbit.points.size(); ++n) {
    if (skipped[n]) {
      report.skipped.push_back(n);
    } else if (verdict[n]) {
      report.gamma.push_back(n);
    }
  }
  return report;
}

AdversarialInstance adversarial_family(unsigned m) {
  if (m < 1 || m > kAdversarialMaxM) {
    fail(ErrorCode::InvalidArgument, "adversarial family index must lie in 1.." + std::to_string(kAdversarialMaxM));
  }
  const RationalMap base = RationalMap::build_int({1, 0, 1}, {1});
  std::vector<Integer> orbit{Integer(0)};
  Integer a_m = 1;
  for (unsigned i = 1; i <= m; ++i) {
    orbit.push_back(orbit.back() * orbit.back() + 1);
    a_m *= orbit.back();
  }
  // psi^{-1}(w) = a_m (w - 1), so psi o f o psi^{-1} = affine_conjugate(f, a_m, -a_m).
  RationalMap phi = affine_conjugate(base, Rational(a_m), Rational(-a_m));
  const ProjPoint one = ProjPoint::from_rational(1);
  return {phi, one, one, PlaceSet(), a_m, orbit};
}

}  // namespace arithdyn
