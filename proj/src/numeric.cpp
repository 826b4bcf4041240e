#include "numeric.hpp"

#include <array>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace arithdyn {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Domain: return "domain_error";
    case ErrorCode::BitCapExceeded: return "bit_cap_exceeded";
    case ErrorCode::IterationCap: return "iteration_cap";
    case ErrorCode::PrecisionExhausted: return "precision_exhausted";
    case ErrorCode::Singular: return "singular_system";
    case ErrorCode::Internal: return "internal_error";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& what, long index) { throw Error(code, what, index); }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Integer parse_integer(std::string_view text) {
  auto s = trim(text);
  if (!valid_integer_text(s)) fail(ErrorCode::InvalidArgument, "not an integer: '" + std::string(text) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  Integer den = parse_integer(s.substr(slash + 1));
  if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& x) { return x.get_str(10); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str(10);
  return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

size_t bit_length(const Integer& x) { return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2); }

Integer pow_ui(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent >= 0) {
    Rational r(pow_ui(base.get_num(), exponent), pow_ui(base.get_den(), exponent));
    r.canonicalize();
    return r;
  }
  if (base == 0) fail(ErrorCode::Domain, "negative power of zero");
  Rational r(pow_ui(base.get_den(), -exponent), pow_ui(base.get_num(), -exponent));
  r.canonicalize();
  return r;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

long remove_factor(Integer& x, const Integer& p) {
  if (x == 0) fail(ErrorCode::Domain, "valuation of zero");
  return static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Integer& x, const Integer& p) {
  Integer tmp = x;
  return remove_factor(tmp, p);
}

bool is_prime(const Integer& x) {
  if (x < 2) return false;
  return mpz_probab_prime_p(x.get_mpz_t(), 40) > 0;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

// Montgomery arithmetic modulo an odd n < 2^64; avoids the 128-bit division.
struct Montgomery {
  u64 n, inv, r2;
  explicit Montgomery(u64 modulus) : n(modulus), inv(modulus) {
    for (int i = 0; i < 5; ++i) inv *= 2 - n * inv;  // n * inv == 1 mod 2^64
    r2 = static_cast<u64>((static_cast<u128>(1) << 64) % n);
    r2 = mulmod(r2, r2, n);
  }
  u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * -inv;
    const u128 sum = t + static_cast<u128>(m) * n;
    u64 r = static_cast<u64>(sum >> 64);
    // the 129th bit is lost when t + m n overflows; only possible for n >= 2^63
    if ((sum < t) || r >= n) r -= n;
    return r;
  }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 to(u64 a) const { return mul(a % n, r2); }
  u64 from(u64 a) const { return reduce(a); }
};

u64 powmod_m(const Montgomery& mg, u64 a, u64 e) {
  u64 r = mg.to(1), b = mg.to(a);
  while (e) {
    if (e & 1) r = mg.mul(r, b);
    b = mg.mul(b, b);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  const Montgomery mg(n);
  const u64 one = mg.to(1), minus_one = mg.to(n - 1);
  // These bases are a deterministic witness set for all n < 2^64.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (a % n == 0) continue;
    u64 x = powmod_m(mg, a, d);
    if (x == one || x == minus_one) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mg.mul(x, x);
      if (x == minus_one) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 binary_gcd(u64 a, u64 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = __builtin_ctzll(a | b);
  a >>= __builtin_ctzll(a);
  while (b) {
    b >>= __builtin_ctzll(b);
    if (a > b) std::swap(a, b);
    b -= a;
  }
  return a << shift;
}

// n odd and composite. Works in Montgomery form throughout; gcds are unaffected
// because the Montgomery radix is coprime to n.
u64 pollard_brent(u64 n, u64 seed) {
  const Montgomery mg(n);
  const u64 c = mg.to(seed * 7 + 1);
  u64 y = mg.to(seed), m = 128, g = 1, r = 1, q = mg.to(1), x = 0, ys = 0;
  auto f = [&](u64 v) {
    u64 w = mg.mul(v, v) + c;
    if (w >= n || w < c) w -= n;
    return w;
  };
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (u64 i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = mg.mul(q, x > y ? x - y : y - x);
      }
      g = binary_gcd(q, n);
      k += m;
    }
    r <<= 1;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = binary_gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  for (u64 seed = 2;; ++seed) {
    u64 d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      factor_rec(d, out);
      factor_rec(n / d, out);
      return;
    }
  }
}

std::vector<PrimePower> collect(std::vector<u64> primes) {
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> result;
  for (u64 p : primes) {
    if (!result.empty() && result.back().prime == Integer(static_cast<unsigned long>(p))) {
      ++result.back().exponent;
    } else {
      result.push_back({Integer(static_cast<unsigned long>(p)), 1});
    }
  }
  return result;
}

}  // namespace

std::vector<PrimePower> factor_u64(std::uint64_t x) {
  std::vector<u64> primes;
  while (x > 1 && x % 2 == 0) {
    primes.push_back(2);
    x /= 2;
  }
  // divisibility by odd p via x * p^-1 mod 2^64 <= (2^64 - 1) / p, no division
  static const auto table = [] {
    std::vector<std::array<u64, 3>> out;  // p, p^-1 mod 2^64, (2^64 - 1) / p
    for (u64 p = 3; p < 1024; p += 2) {
      bool prime = true;
      for (u64 q = 3; q * q <= p; q += 2) prime = prime && p % q != 0;
      if (!prime) continue;
      u64 inv = p;
      for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
      out.push_back({p, inv, ~u64{0} / p});
    }
    return out;
  }();
  for (const auto& [p, inv, limit] : table) {
    if (p * p > x) break;
    while (x * inv <= limit) {
      primes.push_back(p);
      x *= inv;
    }
  }
  if (x > 1) factor_rec(x, primes);
  return collect(std::move(primes));
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1000000;
    std::vector<bool> composite(limit, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

const Integer& small_primorial() {
  static const Integer product = [] {
    // product tree keeps the multiplication subquadratic
    std::vector<Integer> level;
    for (auto p : small_primes()) level.emplace_back(static_cast<unsigned long>(p));
    while (level.size() > 1) {
      std::vector<Integer> next;
      next.reserve((level.size() + 1) / 2);
      for (size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] * level[i + 1]);
      if (level.size() % 2) next.push_back(level.back());
      level.swap(next);
    }
    return level.front();
  }();
  return product;
}

PartialFactorization partial_factor(const Integer& x) {
  PartialFactorization out;
  Integer rest = abs_value(x);
  if (rest == 0) fail(ErrorCode::Domain, "cannot factor zero");
  if (rest.fits_ulong_p()) {
    out.primes = factor_u64(rest.get_ui());
    return out;
  }
  Integer smooth;
  mpz_gcd(smooth.get_mpz_t(), rest.get_mpz_t(), small_primorial().get_mpz_t());
  if (smooth != 1) {
    for (auto p : small_primes()) {
      if (smooth == 1) break;
      if (mpz_divisible_ui_p(smooth.get_mpz_t(), p)) {
        Integer prime(static_cast<unsigned long>(p));
        mpz_divexact_ui(smooth.get_mpz_t(), smooth.get_mpz_t(), p);
        out.primes.push_back({prime, remove_factor(rest, prime)});
      }
    }
  }
  if (rest == 1) return out;
  if (rest.fits_ulong_p()) {
    for (auto& pp : factor_u64(rest.get_ui())) out.primes.push_back(pp);
  } else if (is_prime(rest)) {
    out.primes.push_back({rest, 1});
  } else {
    out.cofactor = rest;
  }
  std::sort(out.primes.begin(), out.primes.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return out;
}

unsigned default_thread_count() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : std::min(n, 16u);
}

void parallel_for(size_t count, const std::function<void(size_t)>& fn, unsigned threads) {
  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<size_t>(threads, count));
  if (threads <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  size_t error_index = count;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (i < error_index) {
            error_index = i;
            error = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace arithdyn
