#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace sylow {

using BigInt = mpz_class;

/// Base-p expansion of q together with the digit sum and the p-adic
/// valuation of q!.
struct PAdicProfile {
  std::uint64_t q = 0;
  std::uint64_t p = 0;
  std::vector<std::uint64_t> digits;  // digits[r] is the coefficient of p^r
  std::uint64_t alpha = 0;
  std::uint64_t nu_factorial = 0;
};

enum class QKind { PrimePower, TwiceOddPrimePower, AdmissibleEven, AdmissibleOdd };

std::string_view to_string(QKind kind) noexcept;

struct QClassification {
  std::uint64_t q = 0;
  QKind kind = QKind::AdmissibleOdd;
  // (p, s) witness for PrimePower (q = p^s) and TwiceOddPrimePower (q = 2 p^s);
  // zero otherwise.
  std::uint64_t p = 0;
  unsigned s = 0;
};

/// Deterministic trial division.
bool is_prime(std::uint64_t n);

std::vector<std::uint64_t> primes_upto(std::uint64_t q);

std::vector<std::uint64_t> base_digits(std::uint64_t n, std::uint64_t p);
std::uint64_t digit_sum(std::uint64_t n, std::uint64_t p);

/// Legendre's sum floor(q/p) + floor(q/p^2) + ...
std::uint64_t legendre_sum(std::uint64_t q, std::uint64_t p);

/// Throws Error(InvalidPrime) for composite p.
PAdicProfile padic_profile(std::uint64_t q, std::uint64_t p);

BigInt factorial(std::uint64_t n);

/// (sum parts)! / prod(parts_i!), exact.
BigInt multinomial(std::span<const std::uint64_t> parts);

/// Exponent of p in the multinomial, via (sum alpha_p(r_i) - alpha_p(sum r_i)) / (p - 1).
std::uint64_t multinomial_valuation(std::span<const std::uint64_t> parts, std::uint64_t p);

/// Exponent of p in n != 0, by repeated division.
std::uint64_t valuation(const BigInt& n, std::uint64_t p);

/// C(n, k) mod p as a product of binomials of base-p digits.
std::uint64_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint64_t p);

QClassification classify_q(std::uint64_t q);

}  // namespace sylow
