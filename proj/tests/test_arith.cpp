#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "sylow/arith.hpp"
#include "sylow/error.hpp"

using namespace sylow;

namespace {

std::vector<std::uint64_t> v(std::initializer_list<std::uint64_t> xs) { return xs; }

}  // namespace

TEST_CASE("padic profile of 12") {
  const auto two = padic_profile(12, 2);
  CHECK(two.digits == v({0, 0, 1, 1}));
  CHECK(two.alpha == 2);
  CHECK(two.nu_factorial == 10);

  const auto three = padic_profile(12, 3);
  CHECK(three.digits == v({0, 1, 1}));
  CHECK(three.alpha == 2);

  CHECK(padic_profile(12, 11).alpha == 2);
  CHECK(padic_profile(12, 5).alpha == 4);
  CHECK(padic_profile(12, 7).alpha == 6);
}

TEST_CASE("prime powers have digit sum one") {
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
    std::uint64_t q = p;
    for (int s = 1; s < 6; ++s, q *= p)
      CHECK(padic_profile(q, p).alpha == 1);
  }
}

TEST_CASE("padic profile rejects composite p") {
  CHECK_THROWS_AS(padic_profile(12, 4), Error);
  try {
    padic_profile(12, 1);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidPrime);
  }
}

TEST_CASE("profile invariants against oracles, q <= 500") {
  for (std::uint64_t q = 1; q <= 500; ++q) {
    for (std::uint64_t p = 2; p <= std::max<std::uint64_t>(q, 2); ++p) {
      if (!oracle::is_prime(p))
        continue;
      const auto prof = padic_profile(q, p);
      std::uint64_t back = 0, weight = 1, sum = 0;
      for (auto a : prof.digits) {
        REQUIRE(a < p);
        back += a * weight;
        weight *= p;
        sum += a;
      }
      REQUIRE(back == q);
      REQUIRE(prof.alpha == sum);
      REQUIRE(prof.alpha == oracle::digit_sum(q, p));
      REQUIRE(prof.nu_factorial == (q - prof.alpha) / (p - 1));
      REQUIRE(prof.nu_factorial == legendre_sum(q, p));
      REQUIRE(prof.nu_factorial == oracle::nu_factorial(q, p));
    }
  }
}

TEST_CASE("multinomial values") {
  CHECK(multinomial(v({8, 4})) == 495);
  CHECK(multinomial(v({12})) == 1);
  CHECK(multinomial(v({9, 3})) == 220);
  CHECK(multinomial(v({11, 1})) == 12);
  // 12! / (5! 5! 1! 1!) by the factorial oracle.
  CHECK(multinomial(v({5, 5, 1, 1})) == oracle::multinomial(v({5, 5, 1, 1})));
  CHECK(multinomial(v({5, 5, 1, 1})) == 33264);
  CHECK(multinomial(v({7, 1, 1, 1, 1, 1})) == 95040);
  CHECK_THROWS_AS(multinomial(std::vector<std::uint64_t>{}), Error);
}

TEST_CASE("multinomial matches the factorial oracle") {
  const std::vector<std::vector<std::uint64_t>> cases = {
      {1, 1}, {2, 3, 4}, {10, 10, 1}, {16, 8, 4, 2, 1}, {25, 25, 9, 1}, {49, 7, 3}, {1, 1, 1, 1, 1, 1}};
  for (const auto& c : cases)
    CHECK(multinomial(c) == oracle::multinomial(c));
  CHECK(factorial(30) == oracle::factorial(30));
}

TEST_CASE("multinomial valuation") {
  CHECK(multinomial_valuation(v({3, 6}), 3) == 1);
  CHECK(multinomial_valuation(v({27}), 3) == 0);
  CHECK(multinomial_valuation(v({4, 8}), 2) == 0);
  CHECK(valuation(BigInt(495), 2) == 0);
  CHECK(valuation(BigInt(220), 2) == 2);
}

TEST_CASE("multinomial valuation on digit-block partitions") {
  for (std::uint64_t q = 2; q <= 60; ++q) {
    for (std::uint64_t p : primes_upto(q)) {
      std::vector<std::uint64_t> parts;
      std::uint64_t weight = 1;
      for (auto a : base_digits(q, p)) {
        for (std::uint64_t i = 0; i < a; ++i)
          parts.push_back(weight);
        weight *= p;
      }
      const auto exact = oracle::multinomial(parts);
      REQUIRE(multinomial_valuation(parts, p) == oracle::valuation(exact, p));
      REQUIRE(valuation(exact, p) == oracle::valuation(exact, p));
      // Sylow-adapted blocks give orbit sizes prime to p.
      REQUIRE(multinomial_valuation(parts, p) == 0);
    }
  }
}

TEST_CASE("multinomial valuation on arbitrary parts") {
  const std::vector<std::vector<std::uint64_t>> cases = {{3, 6}, {5, 5, 1, 1}, {2, 2, 2}, {9, 9}, {4, 4, 4, 4}};
  for (const auto& c : cases) {
    for (std::uint64_t p : {2u, 3u, 5u, 7u})
      CHECK(multinomial_valuation(c, p) == oracle::valuation(oracle::multinomial(c), p));
  }
}

TEST_CASE("binomial mod p") {
  CHECK(binomial_mod_p(12, 4, 2) == 1);
  CHECK(binomial_mod_p(12, 3, 3) == 1);
  CHECK(binomial_mod_p(17, 0, 5) == 1);
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const auto rows = oracle::pascal_mod(60, p);
    for (std::uint64_t n = 0; n <= 60; ++n) {
      for (std::uint64_t k = 0; k <= n; ++k) {
        REQUIRE(binomial_mod_p(n, k, p) == rows[n][k]);
        const mpz_class m = oracle::multinomial({k, n - k}) % mpz_class(static_cast<unsigned long>(p));
        REQUIRE(binomial_mod_p(n, k, p) == m.get_ui());
      }
    }
  }
}

TEST_CASE("classify_q examples") {
  const auto sixteen = classify_q(16);
  CHECK(sixteen.kind == QKind::PrimePower);
  CHECK(sixteen.p == 2);
  CHECK(sixteen.s == 4);
  const auto eighteen = classify_q(18);
  CHECK(eighteen.kind == QKind::TwiceOddPrimePower);
  CHECK(eighteen.p == 3);
  CHECK(eighteen.s == 2);
  CHECK(classify_q(12).kind == QKind::AdmissibleEven);
  CHECK(classify_q(15).kind == QKind::AdmissibleOdd);
  CHECK(classify_q(2).kind == QKind::PrimePower);
  CHECK_THROWS_AS(classify_q(1), Error);
}

TEST_CASE("classify_q partitions [2, 200]") {
  for (std::uint64_t q = 2; q <= 200; ++q) {
    bool prime_power = false, twice = false;
    for (std::uint64_t p = 2; p <= q; ++p) {
      if (!oracle::is_prime(p))
        continue;
      for (std::uint64_t x = p; x <= q; x *= p) {
        prime_power = prime_power || x == q;
        twice = twice || (p > 2 && 2 * x == q);
      }
    }
    const auto c = classify_q(q);
    INFO("q = " << q);
    REQUIRE((prime_power + twice) <= 1);
    if (prime_power)
      REQUIRE(c.kind == QKind::PrimePower);
    else if (twice)
      REQUIRE(c.kind == QKind::TwiceOddPrimePower);
    else
      REQUIRE(c.kind == (q % 2 == 0 ? QKind::AdmissibleEven : QKind::AdmissibleOdd));
    if (c.kind == QKind::PrimePower || c.kind == QKind::TwiceOddPrimePower) {
      std::uint64_t x = 1;
      for (unsigned i = 0; i < c.s; ++i)
        x *= c.p;
      REQUIRE((c.kind == QKind::PrimePower ? x : 2 * x) == q);
    }
  }
}

TEST_CASE("primes_upto") {
  CHECK(primes_upto(12) == v({2, 3, 5, 7, 11}));
  CHECK(primes_upto(2) == v({2}));
  const auto thirty = primes_upto(30);
  CHECK(thirty.size() == 10);
  CHECK(thirty.back() == 29);
  for (std::uint64_t n = 0; n <= 1000; ++n)
    REQUIRE(is_prime(n) == oracle::is_prime(n));
}
