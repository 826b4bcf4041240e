#pragma once

// Slow, independent reference implementations used as test oracles. None of
// these call into the library's algorithms; they only share the GMP types.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using Integer = mpz_class;
using Rational = mpq_class;

// Uniform integer in [-(2^bits - 1), 2^bits - 1] built from 32-bit chunks.
inline Integer random_integer(std::mt19937_64& rng, unsigned bits, bool allow_negative = true) {
  Integer x = 0;
  unsigned left = bits;
  while (left > 0) {
    const unsigned take = left < 32 ? left : 32;
    x <<= take;
    x += static_cast<unsigned long>(rng() & ((take == 32) ? 0xffffffffULL : ((1ULL << take) - 1)));
    left -= take;
  }
  if (allow_negative && (rng() & 1)) x = -x;
  return x;
}

inline Rational random_rational(std::mt19937_64& rng, unsigned bits, bool allow_zero = false) {
  for (;;) {
    Integer p = random_integer(rng, 1 + rng() % bits);
    Integer q = random_integer(rng, 1 + rng() % bits, false);
    if (q == 0 || (!allow_zero && p == 0)) continue;
    Rational r(p, q);
    r.canonicalize();
    return r;
  }
}

// num/den in lowest terms (mpq_class arithmetic assumes canonical input).
inline Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// v_p by exact division with repeated squaring of p, so huge valuations on
// million-bit values stay cheap.
inline long valuation(Integer x, const Integer& p) {
  if (x == 0) return -1;
  std::vector<Integer> squares{p};  // p^(2^i)
  while (x % squares.back() == 0) {
    x /= squares.back();
    squares.push_back(squares.back() * squares.back());
  }
  long v = 0;
  for (size_t i = 0; i + 1 < squares.size(); ++i) v += 1L << i;
  for (size_t i = squares.size(); i-- > 0;) {
    if (x % squares[i] == 0) {
      x /= squares[i];
      v += 1L << i;
    }
  }
  return v;
}

inline long valuation(const Rational& x, const Integer& p) {
  return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

// Trial division; fine for the small values the tests feed it.
inline std::vector<std::uint64_t> trial_factor(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= x; ++p) {
    while (x % p == 0) {
      out.push_back(p);
      x /= p;
    }
  }
  if (x > 1) out.push_back(x);
  return out;
}

inline bool trial_is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t p = 2; p * p <= x; ++p)
    if (x % p == 0) return false;
  return true;
}

// Cofactor (Laplace) expansion along the first row.
inline Integer laplace_det(const std::vector<std::vector<Integer>>& m) {
  const size_t n = m.size();
  if (n == 1) return m[0][0];
  Integer det = 0;
  for (size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    const Integer term = m[0][c] * laplace_det(minor);
    det += (c % 2 == 0) ? term : Integer(-term);
  }
  return det;
}

// Affine model of P^1(Q): nullopt stands for infinity.
using AffinePoint = std::optional<Rational>;

inline Rational horner(const std::vector<Rational>& c, const Rational& z) {
  Rational acc = 0;
  for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

// f(z)/g(z) with f, g given low-to-high, both padded to length d + 1.
inline AffinePoint apply(const std::vector<Rational>& f, const std::vector<Rational>& g, const AffinePoint& z) {
  if (!z) {
    // value at infinity is the ratio of leading coefficients
    const Rational& a = f.back();
    const Rational& b = g.back();
    if (b == 0) return std::nullopt;
    return Rational(a / b);
  }
  const Rational den = horner(g, *z);
  if (den == 0) return std::nullopt;
  return Rational(horner(f, *z) / den);
}

inline AffinePoint iterate(const std::vector<Rational>& f, const std::vector<Rational>& g, AffinePoint z,
                           unsigned long n) {
  for (unsigned long i = 0; i < n; ++i) z = apply(f, g, z);
  return z;
}

// Exact projective iteration of [F(x0,x1) : G(x0,x1)] for integer f, g of
// length d + 1 (low-to-high). Common factors are kept, which avoids gcds on
// the multi-million-bit coordinates of long orbits.
inline std::pair<Integer, Integer> iterate_projective(const std::vector<Integer>& f, const std::vector<Integer>& g,
                                                      Integer x0, Integer x1, unsigned long n) {
  const size_t d = f.size() - 1;
  for (unsigned long i = 0; i < n; ++i) {
    std::vector<Integer> p0{1}, p1{1};
    for (size_t k = 1; k <= d; ++k) {
      p0.push_back(p0.back() * x0);
      p1.push_back(p1.back() * x1);
    }
    Integer a = 0, b = 0;
    for (size_t k = 0; k <= d; ++k) {
      const Integer mono = p0[k] * p1[d - k];
      a += f[k] * mono;
      b += g[k] * mono;
    }
    x0 = std::move(a);
    x1 = std::move(b);
  }
  return {x0, x1};
}

inline std::vector<Rational> padded(std::vector<Rational> c, size_t len) {
  c.resize(len, Rational(0));
  return c;
}

// Brute-force v_p(a^n - b^n).
inline long lte_brute(const Integer& a, const Integer& b, unsigned long n, const Integer& p) {
  Integer an, bn;
  mpz_pow_ui(an.get_mpz_t(), a.get_mpz_t(), n);
  mpz_pow_ui(bn.get_mpz_t(), b.get_mpz_t(), n);
  return valuation(Integer(an - bn), p);
}

// log h(x) for x = p/q in lowest terms, in double precision.
inline double weil_height(const Rational& x) {
  const Integer m = abs(x.get_num()) > x.get_den() ? Integer(abs(x.get_num())) : Integer(x.get_den());
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, m.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

// Canonical height of 0 under z^2 + 1 by the log-space recurrence
// L_{n+1} = 2 L_n + log(1 + e^{-2 L_n}) on the integer orbit 0, 1, 2, 5, ...
inline double hhat_z2_plus_1_at_0() {
  double L = std::log(5.0);  // orbit index 3
  double scale = 8.0;
  for (int n = 3; n < 60; ++n) {
    L = 2 * L + std::log1p(std::exp(-2 * L));
    scale *= 2;
  }
  return L / scale;
}

// Monte-Carlo estimate of vol{x in [0,1]^m : sum x <= t} and its standard error.
inline std::pair<double, double> simplex_volume_mc(double t, int m, unsigned samples, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  unsigned hits = 0;
  for (unsigned s = 0; s < samples; ++s) {
    double sum = 0;
    for (int i = 0; i < m; ++i) sum += u(rng);
    hits += sum <= t ? 1 : 0;
  }
  const double p = static_cast<double>(hits) / samples;
  return {p, std::sqrt(std::max(p * (1 - p), 1e-12) / samples)};
}

}  // namespace oracle
