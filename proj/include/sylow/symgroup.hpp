#pragma once

#include <cstdint>
#include <initializer_list>
#include <set>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "sylow/arith.hpp"

namespace sylow {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// A set partition of I = {1..q} into ordered blocks. Elements are 1-based.
class BlockPartition {
public:
  /// Validates that the blocks are non-empty, pairwise disjoint and cover {1..q}.
  BlockPartition(std::uint64_t q, std::vector<std::vector<std::uint64_t>> blocks);

  std::uint64_t q() const noexcept { return q_; }
  std::size_t num_blocks() const noexcept { return blocks_.size(); }
  const std::vector<std::vector<std::uint64_t>>& blocks() const noexcept { return blocks_; }
  std::vector<std::uint64_t> sizes() const;

  /// Index of the block containing element i (1-based element, 0-based block).
  std::size_t block_of(std::uint64_t i) const { return owner_.at(i - 1); }

  /// True when every block has p-power size and the size multiset matches
  /// the base-p digits of q.
  bool is_sylow_adapted(std::uint64_t p) const;

private:
  std::uint64_t q_;
  std::vector<std::vector<std::uint64_t>> blocks_;
  std::vector<std::size_t> owner_;
};

/// Consecutive ranges ordered by decreasing size: a_r ranges of length p^r.
BlockPartition canonical_partition(std::uint64_t q, std::uint64_t p);

/// Dimension of the fixed subspace of a Sylow p-subgroup on the reduced
/// standard representation: alpha_p(q) - 1.
std::uint64_t fixed_dim_L(std::uint64_t q, std::uint64_t p);

/// Permutation of {1..n} in one-line notation, images 1-based.
class Permutation {
public:
  explicit Permutation(std::vector<std::uint64_t> images);
  Permutation(std::initializer_list<std::uint64_t> images)
      : Permutation(std::vector<std::uint64_t>(images)) {}

  static Permutation identity(std::uint64_t n);
  static Permutation transposition(std::uint64_t n, std::uint64_t i, std::uint64_t j);

  std::uint64_t size() const noexcept { return images_.size(); }
  std::uint64_t operator()(std::uint64_t i) const { return images_.at(i - 1); }
  const std::vector<std::uint64_t>& images() const noexcept { return images_; }

  /// Coordinate action: the coordinate at position i moves to position sigma(i).
  RationalVector apply(const RationalVector& coords) const;

private:
  std::vector<std::uint64_t> images_;
};

/// The class sum_i t_i e_{J_i} in L, stored as its sum-zero representative.
struct OrbitPoint {
  BlockPartition partition;
  RationalVector t;
  RationalVector coords;
  Rational norm_sq;
};

/// t_i = i for block index i = 0, 1, ...
RationalVector canonical_t(std::size_t blocks);

/// Throws DegenerateT on repeated t values and ZeroClass for a single block.
OrbitPoint orbit_point(const BlockPartition& partition, RationalVector t);

BigInt stabilizer_order(const OrbitPoint& pt);
BigInt orbit_size(const OrbitPoint& pt);

/// Applies all q! permutations; q <= 8 or Error(TooLarge).
std::set<RationalVector> enumerate_orbit_bruteforce(const OrbitPoint& pt);

bool is_stabilized_by(const Permutation& perm, const OrbitPoint& pt);

/// True when a and b are linearly dependent (in particular when b = +-x up to scale).
bool proportional(const RationalVector& a, const RationalVector& b);

/// Two points with the same block structure, distinct t values, and not
/// proportional. Needs at least three blocks (Error(NoSecondPoint) otherwise).
std::pair<OrbitPoint, OrbitPoint> pair_points(const BlockPartition& partition);

}  // namespace sylow
