#include "sylow/arith.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "sylow/error.hpp"

namespace sylow {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
  case Errc::InvalidPrime: return "InvalidPrime";
  case Errc::OutOfRange: return "OutOfRange";
  case Errc::InvalidArgument: return "InvalidArgument";
  case Errc::DegenerateT: return "DegenerateT";
  case Errc::ZeroClass: return "ZeroClass";
  case Errc::TooLarge: return "TooLarge";
  case Errc::NoSecondPoint: return "NoSecondPoint";
  case Errc::NoUnitCombination: return "NoUnitCombination";
  case Errc::TheoremViolation: return "TheoremViolation";
  case Errc::PrimePowerBlocked: return "PrimePowerBlocked";
  case Errc::TwiceOddPrimePowerBlocked: return "TwiceOddPrimePowerBlocked";
  case Errc::HypothesesFail: return "HypothesesFail";
  case Errc::DimMismatch: return "DimMismatch";
  case Errc::InvalidSpec: return "InvalidSpec";
  case Errc::NotUnit: return "NotUnit";
  case Errc::NoAction: return "NoAction";
  case Errc::NoConvergence: return "NoConvergence";
  case Errc::NotEquivariant: return "NotEquivariant";
  case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string_view to_string(QKind kind) noexcept {
  switch (kind) {
  case QKind::PrimePower: return "PrimePower";
  case QKind::TwiceOddPrimePower: return "TwiceOddPrimePower";
  case QKind::AdmissibleEven: return "AdmissibleEven";
  case QKind::AdmissibleOdd: return "AdmissibleOdd";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  if (n % 2 == 0)
    return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0)
      return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_upto(std::uint64_t q) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t n = 2; n <= q; ++n) {
    if (is_prime(n))
      primes.push_back(n);
  }
  return primes;
}

namespace {

void require_prime(std::uint64_t p) {
  if (!is_prime(p))
    throw Error(Errc::InvalidPrime, std::to_string(p) + " is not prime");
}

}  // namespace

std::vector<std::uint64_t> base_digits(std::uint64_t n, std::uint64_t p) {
  if (p < 2)
    throw Error(Errc::InvalidArgument, "base must be at least 2");
  std::vector<std::uint64_t> digits;
  while (n > 0) {
    digits.push_back(n % p);
    n /= p;
  }
  return digits;
}

std::uint64_t digit_sum(std::uint64_t n, std::uint64_t p) {
  const auto digits = base_digits(n, p);
  return std::accumulate(digits.begin(), digits.end(), std::uint64_t{0});
}

std::uint64_t legendre_sum(std::uint64_t q, std::uint64_t p) {
  std::uint64_t total = 0;
  for (std::uint64_t m = q / p; m > 0; m /= p)
    total += m;
  return total;
}

PAdicProfile padic_profile(std::uint64_t q, std::uint64_t p) {
  require_prime(p);
  if (q == 0)
    throw Error(Errc::OutOfRange, "q must be positive");
  PAdicProfile profile;
  profile.q = q;
  profile.p = p;
  profile.digits = base_digits(q, p);
  profile.alpha = std::accumulate(profile.digits.begin(), profile.digits.end(), std::uint64_t{0});
  profile.nu_factorial = (q - profile.alpha) / (p - 1);
  if (profile.nu_factorial != legendre_sum(q, p))
    throw std::logic_error("closed-form valuation disagrees with Legendre sum");
  return profile;
}

BigInt factorial(std::uint64_t n) {
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

BigInt multinomial(std::span<const std::uint64_t> parts) {
  if (parts.empty())
    throw Error(Errc::InvalidArgument, "multinomial of an empty list");
  // Product of binomials C(r_1 + ... + r_i, r_i).
  BigInt result = 1;
  BigInt step;
  std::uint64_t running = 0;
  for (std::uint64_t part : parts) {
    running += part;
    mpz_bin_uiui(step.get_mpz_t(), running, part);
    result *= step;
  }
  return result;
}

std::uint64_t multinomial_valuation(std::span<const std::uint64_t> parts, std::uint64_t p) {
  require_prime(p);
  if (parts.empty())
    throw Error(Errc::InvalidArgument, "multinomial of an empty list");
  std::uint64_t total = 0;
  std::uint64_t alpha_sum = 0;
  for (std::uint64_t part : parts) {
    total += part;
    alpha_sum += digit_sum(part, p);
  }
  return (alpha_sum - digit_sum(total, p)) / (p - 1);
}

std::uint64_t valuation(const BigInt& n, std::uint64_t p) {
  if (n == 0)
    throw Error(Errc::InvalidArgument, "valuation of zero");
  BigInt m = abs(n);
  std::uint64_t v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

std::uint64_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  require_prime(p);
  if (k > n)
    throw Error(Errc::InvalidArgument, "binomial with k > n");
  std::uint64_t result = 1;
  while (n > 0 || k > 0) {
    const std::uint64_t ni = n % p;
    const std::uint64_t ki = k % p;
    if (ki > ni)
      return 0;
    // Digits are below p, so C(ni, ki) fits in a small exact computation.
    BigInt small;
    mpz_bin_uiui(small.get_mpz_t(), ni, ki);
    const std::uint64_t residue = mpz_fdiv_ui(small.get_mpz_t(), p);
    result = static_cast<std::uint64_t>((static_cast<unsigned __int128>(result) * residue) % p);
    n /= p;
    k /= p;
  }
  return result % p;
}

QClassification classify_q(std::uint64_t q) {
  if (q < 2)
    throw Error(Errc::OutOfRange, "classification needs q >= 2");

  auto prime_power = [](std::uint64_t n) -> std::pair<std::uint64_t, unsigned> {
    std::uint64_t p = 2;
    while (n % p != 0)
      ++p;
    unsigned s = 0;
    while (n % p == 0) {
      n /= p;
      ++s;
    }
    return n == 1 ? std::pair{p, s} : std::pair{std::uint64_t{0}, 0u};
  };

  QClassification result;
  result.q = q;
  if (auto [p, s] = prime_power(q); p != 0) {
    result.kind = QKind::PrimePower;
    result.p = p;
    result.s = s;
    return result;
  }
  if (q % 2 == 0) {
    if (auto [p, s] = prime_power(q / 2); p > 2) {
      result.kind = QKind::TwiceOddPrimePower;
      result.p = p;
      result.s = s;
      return result;
    }
    result.kind = QKind::AdmissibleEven;
    return result;
  }
  result.kind = QKind::AdmissibleOdd;
  return result;
}

}  // namespace sylow
