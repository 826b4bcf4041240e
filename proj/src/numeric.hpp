#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace arithdyn {

using Integer = mpz_class;
using Rational = mpq_class;

enum class ErrorCode {
  InvalidArgument,
  Domain,
  BitCapExceeded,
  IterationCap,
  PrecisionExhausted,
  Singular,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, long index = -1)
      : std::runtime_error(what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  // Orbit index at which a cap was hit, or -1.
  long index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  long index_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what, long index = -1);

Integer parse_integer(std::string_view text);
// Accepts "p/q", "p", with optional sign. Result is canonical.
Rational parse_rational(std::string_view text);
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

Integer abs_value(const Integer& x);
size_t bit_length(const Integer& x);
Integer pow_ui(const Integer& base, unsigned long exponent);
template <std::integral E>
Integer pow(const Integer& base, E exponent) {
  if constexpr (std::is_signed_v<E>) {
    if (exponent < 0) fail(ErrorCode::Domain, "negative exponent for an integer power");
  }
  return pow_ui(base, static_cast<unsigned long>(exponent));
}
Rational pow(const Rational& base, long exponent);
Integer binomial(unsigned long n, unsigned long k);

// Largest e with p^e | x; x must be nonzero.
long remove_factor(Integer& x, const Integer& p);
long valuation(const Integer& x, const Integer& p);

// Deterministic for x < 2^64 (BPSW); probabilistic with 40 rounds beyond.
bool is_prime(const Integer& x);

struct PrimePower {
  Integer prime;
  long exponent = 0;
};

// Full factorization of |x| for 64-bit values (Pollard-Brent).
std::vector<PrimePower> factor_u64(std::uint64_t x);

struct PartialFactorization {
  std::vector<PrimePower> primes;  // proven or BPSW-probable primes
  Integer cofactor = 1;            // unresolved composite part, 1 when complete
};

// Strips every prime below 10^6 via a gcd against the primorial, then tests
// the cofactor for primality; 64-bit cofactors are fully factored.
PartialFactorization partial_factor(const Integer& x);

// Product of all primes below 10^6, computed once.
const Integer& small_primorial();
const std::vector<std::uint32_t>& small_primes();

// Runs fn(i) for i in [0, count) on up to `threads` worker threads.
// Exceptions are rethrown on the calling thread (lowest index first).
void parallel_for(size_t count, const std::function<void(size_t)>& fn, unsigned threads = 0);
unsigned default_thread_count();

}  // namespace arithdyn
