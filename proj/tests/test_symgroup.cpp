#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "sylow/error.hpp"
#include "sylow/symgroup.hpp"

using namespace sylow;

namespace {

RationalVector rv(std::initializer_list<int> xs) {
  RationalVector out;
  for (int x : xs)
    out.emplace_back(x);
  return out;
}

std::vector<std::vector<std::uint64_t>> all_perms(std::uint64_t q) {
  std::vector<std::uint64_t> images(q);
  std::iota(images.begin(), images.end(), 1);
  std::vector<std::vector<std::uint64_t>> out;
  do {
    out.push_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

bool preserves_blocks(const std::vector<std::uint64_t>& images, const BlockPartition& part) {
  for (std::uint64_t i = 1; i <= part.q(); ++i) {
    if (part.block_of(images[i - 1]) != part.block_of(i))
      return false;
  }
  return true;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("canonical partitions") {
  const auto two = canonical_partition(12, 2);
  REQUIRE(two.num_blocks() == 2);
  CHECK(two.blocks()[0] == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(two.blocks()[1] == std::vector<std::uint64_t>{9, 10, 11, 12});
  const auto three = canonical_partition(12, 3);
  CHECK(three.sizes() == std::vector<std::uint64_t>{9, 3});
  CHECK(three.blocks()[1] == std::vector<std::uint64_t>{10, 11, 12});
  CHECK(canonical_partition(7, 7).num_blocks() == 1);
  CHECK(canonical_partition(12, 5).sizes() == std::vector<std::uint64_t>{5, 5, 1, 1});
  for (std::uint64_t q = 2; q <= 60; ++q) {
    for (auto p : primes_upto(q)) {
      const auto part = canonical_partition(q, p);
      REQUIRE(part.is_sylow_adapted(p));
      REQUIRE(part.num_blocks() == padic_profile(q, p).alpha);
    }
  }
}

TEST_CASE("block partition validation") {
  CHECK_THROWS_AS(BlockPartition(3, {{1, 2}, {2, 3}}), Error);
  CHECK_THROWS_AS(BlockPartition(3, {{1, 2}}), Error);
  CHECK_THROWS_AS(BlockPartition(3, {{1, 2}, {}, {3}}), Error);
  CHECK_THROWS_AS(BlockPartition(3, {{1, 2}, {4}}), Error);
  const BlockPartition ok(4, {{2, 4}, {1, 3}});
  CHECK(ok.block_of(3) == 1);
  CHECK(ok.is_sylow_adapted(2) == false);  // two blocks of size 2, but 4 = 1 * 2^2
  CHECK(BlockPartition(6, {{1, 2, 3, 4}, {5, 6}}).is_sylow_adapted(2));
}

TEST_CASE("fixed dimension of L") {
  CHECK(fixed_dim_L(12, 3) == 1);
  CHECK(fixed_dim_L(27, 3) == 0);
  CHECK(fixed_dim_L(12, 7) == 5);
}

TEST_CASE("orbit point construction") {
  const BlockPartition part(3, {{1, 2}, {3}});
  const auto pt = orbit_point(part, rv({0, 1}));
  CHECK(pt.coords == RationalVector{Rational(-1, 3), Rational(-1, 3), Rational(2, 3)});
  CHECK(pt.norm_sq == Rational(2, 3));
  CHECK(code_of([&] { orbit_point(part, rv({0, 0})); }) == Errc::DegenerateT);
  CHECK(code_of([&] { orbit_point(canonical_partition(9, 3), rv({0})); }) == Errc::ZeroClass);
  CHECK(code_of([&] { orbit_point(part, rv({0, 1, 2})); }) == Errc::InvalidArgument);
}

TEST_CASE("orbit coordinates always sum to zero") {
  for (std::uint64_t q = 2; q <= 40; ++q) {
    for (auto p : primes_upto(q)) {
      const auto part = canonical_partition(q, p);
      if (part.num_blocks() < 2)
        continue;
      const auto pt = orbit_point(part, canonical_t(part.num_blocks()));
      Rational sum = 0;
      for (const auto& c : pt.coords)
        sum += c;
      REQUIRE(sum == 0);
    }
  }
}

TEST_CASE("stabilizer and orbit sizes") {
  const BlockPartition part(3, {{1, 2}, {3}});
  const auto pt = orbit_point(part, rv({0, 1}));
  CHECK(stabilizer_order(pt) == 2);
  CHECK(orbit_size(pt) == 3);
  const auto twelve = orbit_point(canonical_partition(12, 2), rv({0, 1}));
  CHECK(stabilizer_order(twelve) == oracle::factorial(8) * oracle::factorial(4));
  CHECK(orbit_size(twelve) == 495);
  CHECK(orbit_size(orbit_point(canonical_partition(12, 11), rv({0, 1}))) == 12);
  const auto singletons = orbit_point(BlockPartition(3, {{1}, {2}, {3}}), rv({0, 1, 2}));
  CHECK(stabilizer_order(singletons) == 1);
}

TEST_CASE("brute-force orbits, q <= 8") {
  CHECK(enumerate_orbit_bruteforce(orbit_point(BlockPartition(3, {{1, 2}, {3}}), rv({0, 1}))).size() == 3);
  CHECK(enumerate_orbit_bruteforce(orbit_point(BlockPartition(4, {{1, 2}, {3, 4}}), rv({0, 1}))).size() == 6);
  CHECK(enumerate_orbit_bruteforce(orbit_point(BlockPartition(2, {{1}, {2}}), rv({0, 1}))).size() == 2);
  for (std::uint64_t q = 2; q <= 8; ++q) {
    for (auto p : primes_upto(q)) {
      const auto part = canonical_partition(q, p);
      if (part.num_blocks() < 2)
        continue;
      const auto pt = orbit_point(part, canonical_t(part.num_blocks()));
      const auto orbit = enumerate_orbit_bruteforce(pt);
      INFO("q = " << q << ", p = " << p);
      REQUIRE(orbit.size() == oracle::distinct_arrangements(pt.coords));
      REQUIRE(BigInt(static_cast<unsigned long>(orbit.size())) == orbit_size(pt));
      REQUIRE(orbit_size(pt) == oracle::factorial(q) / stabilizer_order(pt));
    }
  }
  CHECK(code_of([] {
          enumerate_orbit_bruteforce(orbit_point(canonical_partition(9, 2), rv({0, 1})));
        }) == Errc::TooLarge);
}

TEST_CASE("stabilizers are Young subgroups, q <= 6") {
  CHECK(is_stabilized_by(Permutation::transposition(3, 1, 2), orbit_point(BlockPartition(3, {{1, 2}, {3}}), rv({0, 1}))));
  CHECK_FALSE(is_stabilized_by(Permutation::transposition(3, 2, 3), orbit_point(BlockPartition(3, {{1, 2}, {3}}), rv({0, 1}))));
  CHECK_FALSE(is_stabilized_by(Permutation{3, 4, 1, 2}, orbit_point(BlockPartition(4, {{1, 2}, {3, 4}}), rv({0, 1}))));
  for (std::uint64_t q = 2; q <= 6; ++q) {
    const auto perms = all_perms(q);
    for (auto p : primes_upto(q)) {
      const auto part = canonical_partition(q, p);
      if (part.num_blocks() < 2)
        continue;
      const auto pt = orbit_point(part, canonical_t(part.num_blocks()));
      BigInt count = 0;
      for (const auto& images : perms) {
        const bool stab = is_stabilized_by(Permutation(images), pt);
        REQUIRE(stab == preserves_blocks(images, part));
        if (stab)
          ++count;
      }
      REQUIRE(count == stabilizer_order(pt));
    }
  }
}

TEST_CASE("pair points") {
  const auto [x3, y3] = pair_points(BlockPartition(3, {{1}, {2}, {3}}));
  CHECK(x3.t == rv({0, 1, 2}));
  CHECK(y3.t == rv({0, 2, 1}));
  CHECK_FALSE(proportional(x3.coords, y3.coords));
  const auto [x4, y4] = pair_points(BlockPartition(4, {{1}, {2}, {3}, {4}}));
  CHECK(y4.t == rv({0, 1, 3, 2}));
  CHECK(code_of([] { pair_points(canonical_partition(12, 2)); }) == Errc::NoSecondPoint);
  CHECK(proportional(rv({1, -1, 0}), rv({-2, 2, 0})));
  CHECK(proportional(rv({1, -1, 0}), rv({0, 0, 0})));
}

TEST_CASE("pair points share stabilizers, q <= 6") {
  for (std::uint64_t q = 3; q <= 6; ++q) {
    const auto perms = all_perms(q);
    for (auto p : primes_upto(q)) {
      const auto part = canonical_partition(q, p);
      if (part.num_blocks() < 3)
        continue;
      const auto [x, y] = pair_points(part);
      REQUIRE(x.partition.blocks() == y.partition.blocks());
      REQUIRE_FALSE(proportional(x.coords, y.coords));
      for (const auto& images : perms) {
        const Permutation perm(images);
        REQUIRE(is_stabilized_by(perm, x) == is_stabilized_by(perm, y));
      }
    }
  }
}

TEST_CASE("permutation action") {
  const Permutation sigma{2, 3, 1};
  CHECK(sigma.apply(rv({10, 20, 30})) == rv({30, 10, 20}));
  CHECK(Permutation::identity(4).apply(rv({1, 2, 3, 4})) == rv({1, 2, 3, 4}));
  CHECK_THROWS_AS(Permutation({1, 1, 2}), Error);
}
