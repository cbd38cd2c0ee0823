#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sylow/arith.hpp"
#include "sylow/error.hpp"
#include "sylow/symgroup.hpp"

namespace sylow {

struct GammaSets {
  std::vector<std::uint64_t> primes;  // every prime p <= q
  std::vector<std::uint64_t> gamma2;  // the primes with alpha_p(q) = 2
};

GammaSets gamma_sets(std::uint64_t q);

// Kind A: odd q, k = 1; the orbit sizes alone generate the unit ideal.
// Kind B: even q, k = 1; orbit sizes plus the congruence correction.
// Kind C: k >= 2; orbit sizes with companion points in R^k (x) L.
enum class CertificateKind { A, B, C };

std::string_view to_string(CertificateKind kind) noexcept;
CertificateKind certificate_kind_from_string(std::string_view s);

struct PrimeRecord {
  std::uint64_t p = 0;
  std::uint64_t alpha = 0;
  std::vector<std::uint64_t> digits;
  std::vector<std::uint64_t> block_sizes;
  BigInt d;
  bool in_gamma2 = false;
  RationalVector t_x;
  std::optional<RationalVector> t_y;

  bool operator==(const PrimeRecord&) const = default;
};

using CheckList = std::vector<std::pair<std::string, bool>>;

struct SectionCertificate {
  std::uint64_t q = 0;
  std::uint64_t k = 1;
  CertificateKind kind = CertificateKind::A;
  std::vector<PrimeRecord> primes;
  std::optional<BigInt> c;
  std::vector<BigInt> n;
  std::optional<std::vector<BigInt>> m;
  CheckList checks;

  bool operator==(const SectionCertificate&) const = default;
};

class NoUnitCombinationError : public Error {
public:
  explicit NoUnitCombinationError(BigInt gcd)
      : Error(Errc::NoUnitCombination, "gcd of the inputs is " + gcd.get_str()),
        gcd_(std::move(gcd)) {}

  const BigInt& gcd() const noexcept { return gcd_; }

private:
  BigInt gcd_;
};

struct BezoutResult {
  BigInt gcd;
  std::vector<BigInt> coefficients;  // sum coefficients[i] * ds[i] == gcd
};

/// Iterated extended gcd over the inputs in ascending order, followed by a
/// size-reduction sweep against the largest input. Deterministic.
BezoutResult bezout(std::span<const BigInt> ds);

/// As bezout(), but throws NoUnitCombinationError unless the gcd is 1.
std::vector<BigInt> bezout_combination(std::span<const BigInt> ds);

struct CongruenceAdjustment {
  BigInt c;
  std::vector<BigInt> m;
};

/// c = 1 - sum ds, m_i = 1 + c n_i. Every flagged prime must divide c
/// (Error(TheoremViolation) otherwise); then m_i = 1 (mod p_i) on flagged entries.
CongruenceAdjustment adjust_congruences(std::span<const BigInt> ds, std::span<const BigInt> n,
                                        const std::vector<bool>& flags,
                                        std::span<const std::uint64_t> ps);

/// Builds a certificate and evaluates all of its checks. Prime powers raise
/// PrimePowerBlocked; q = 2 p^s with k = 1 raises TwiceOddPrimePowerBlocked.
SectionCertificate build_certificate(std::uint64_t q, std::uint64_t k);

/// Recomputes every check from the certificate's own fields.
CheckList evaluate_checks(const SectionCertificate& cert);

struct VerificationResult {
  bool ok = false;
  std::vector<std::string> failed;
};

VerificationResult verify_certificate(const SectionCertificate& cert);

enum class Verdict { SectionExists, Counterexample, Undecided };

std::string_view to_string(Verdict verdict) noexcept;

struct HypothesisItem {
  std::string id;
  bool applies = false;
  std::string reason;
};

struct HypothesisReport {
  std::uint64_t q = 0;
  std::uint64_t k = 0;
  std::vector<HypothesisItem> results;
  std::vector<std::string> blockers;
  Verdict verdict = Verdict::Undecided;
};

HypothesisReport check_hypotheses(std::uint64_t q, std::uint64_t k);

/// The ideal {1 - deg f} of a set of achievable degrees, as its
/// non-negative generator.
struct DegreeIdeal {
  BigInt generator;

  bool contains(const BigInt& x) const {
    return generator == 0 ? x == 0 : mpz_divisible_p(x.get_mpz_t(), generator.get_mpz_t()) != 0;
  }
};

/// Requires 1 among the degrees (the identity map).
DegreeIdeal noakes_generator(std::span<const BigInt> achievable_degrees);

/// Least subset of [-bound, bound] containing seed and 0 and closed under
/// (x, y, r) -> (1 - r) x + r y, computed as a brute-force fixed point.
std::set<std::int64_t> closure_oracle(const std::set<std::int64_t>& seed, std::int64_t bound);

}  // namespace sylow
