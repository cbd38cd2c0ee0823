#include "sylow/symgroup.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sylow/error.hpp"

namespace sylow {

BlockPartition::BlockPartition(std::uint64_t q, std::vector<std::vector<std::uint64_t>> blocks)
    : q_(q), blocks_(std::move(blocks)), owner_(q, blocks_.size()) {
  if (q == 0)
    throw Error(Errc::InvalidArgument, "partition of an empty set");
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].empty())
      throw Error(Errc::InvalidArgument, "empty block");
    for (std::uint64_t i : blocks_[b]) {
      if (i < 1 || i > q)
        throw Error(Errc::InvalidArgument, "element " + std::to_string(i) + " outside {1..q}");
      if (owner_[i - 1] != blocks_.size())
        throw Error(Errc::InvalidArgument, "element " + std::to_string(i) + " in two blocks");
      owner_[i - 1] = b;
    }
  }
  if (std::find(owner_.begin(), owner_.end(), blocks_.size()) != owner_.end())
    throw Error(Errc::InvalidArgument, "blocks do not cover {1..q}");
}

std::vector<std::uint64_t> BlockPartition::sizes() const {
  std::vector<std::uint64_t> sizes;
  sizes.reserve(blocks_.size());
  for (const auto& block : blocks_)
    sizes.push_back(block.size());
  return sizes;
}

bool BlockPartition::is_sylow_adapted(std::uint64_t p) const {
  if (!is_prime(p))
    return false;
  const auto digits = base_digits(q_, p);
  std::vector<std::uint64_t> counts(digits.size(), 0);
  for (const auto& block : blocks_) {
    std::uint64_t size = block.size();
    std::size_t r = 0;
    while (size % p == 0) {
      size /= p;
      ++r;
    }
    if (size != 1 || r >= counts.size())
      return false;
    ++counts[r];
  }
  return counts == digits;
}

BlockPartition canonical_partition(std::uint64_t q, std::uint64_t p) {
  if (!is_prime(p))
    throw Error(Errc::InvalidPrime, std::to_string(p) + " is not prime");
  if (p > q)
    throw Error(Errc::OutOfRange, "canonical partition needs p <= q");
  const auto digits = base_digits(q, p);
  std::vector<std::uint64_t> powers(digits.size(), 1);
  for (std::size_t r = 1; r < powers.size(); ++r)
    powers[r] = powers[r - 1] * p;

  std::vector<std::vector<std::uint64_t>> blocks;
  std::uint64_t next = 1;
  for (std::size_t r = digits.size(); r-- > 0;) {
    for (std::uint64_t copy = 0; copy < digits[r]; ++copy) {
      std::vector<std::uint64_t> block(powers[r]);
      std::iota(block.begin(), block.end(), next);
      next += powers[r];
      blocks.push_back(std::move(block));
    }
  }
  return BlockPartition(q, std::move(blocks));
}

std::uint64_t fixed_dim_L(std::uint64_t q, std::uint64_t p) {
  if (p > q)
    throw Error(Errc::OutOfRange, "fixed dimension needs p <= q");
  return padic_profile(q, p).alpha - 1;
}

Permutation::Permutation(std::vector<std::uint64_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::uint64_t image : images_) {
    if (image < 1 || image > images_.size() || seen[image - 1])
      throw Error(Errc::InvalidArgument, "not a permutation in one-line notation");
    seen[image - 1] = true;
  }
}

Permutation Permutation::identity(std::uint64_t n) {
  std::vector<std::uint64_t> images(n);
  std::iota(images.begin(), images.end(), std::uint64_t{1});
  return Permutation(std::move(images));
}

Permutation Permutation::transposition(std::uint64_t n, std::uint64_t i, std::uint64_t j) {
  auto images = identity(n).images_;
  std::swap(images.at(i - 1), images.at(j - 1));
  return Permutation(std::move(images));
}

RationalVector Permutation::apply(const RationalVector& coords) const {
  if (coords.size() != images_.size())
    throw Error(Errc::DimMismatch, "permutation and vector sizes differ");
  RationalVector out(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i)
    out[images_[i] - 1] = coords[i];
  return out;
}

RationalVector canonical_t(std::size_t blocks) {
  RationalVector t;
  t.reserve(blocks);
  for (std::size_t i = 0; i < blocks; ++i)
    t.emplace_back(static_cast<unsigned long>(i));
  return t;
}

OrbitPoint orbit_point(const BlockPartition& partition, RationalVector t) {
  if (t.size() != partition.num_blocks())
    throw Error(Errc::InvalidArgument, "need one t value per block");
  if (partition.num_blocks() < 2)
    throw Error(Errc::ZeroClass, "a single block gives the zero class in L");
  auto sorted = t;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::DegenerateT, "t values must be pairwise distinct");

  const std::uint64_t q = partition.q();
  RationalVector coords(q);
  Rational sum = 0;
  for (std::uint64_t i = 1; i <= q; ++i) {
    coords[i - 1] = t[partition.block_of(i)];
    sum += coords[i - 1];
  }
  const Rational mean = sum / Rational(static_cast<unsigned long>(q));
  Rational norm_sq = 0;
  for (auto& c : coords) {
    c -= mean;
    c.canonicalize();
    norm_sq += c * c;
  }
  return OrbitPoint{partition, std::move(t), std::move(coords), norm_sq};
}

BigInt stabilizer_order(const OrbitPoint& pt) {
  BigInt order = 1;
  for (std::uint64_t size : pt.partition.sizes())
    order *= factorial(size);
  return order;
}

BigInt orbit_size(const OrbitPoint& pt) {
  const auto sizes = pt.partition.sizes();
  return multinomial(sizes);
}

std::set<RationalVector> enumerate_orbit_bruteforce(const OrbitPoint& pt) {
  const std::uint64_t q = pt.partition.q();
  if (q > 8)
    throw Error(Errc::TooLarge, "brute-force orbit enumeration is capped at q = 8");
  std::set<RationalVector> orbit;
  auto images = Permutation::identity(q).images();
  do {
    orbit.insert(Permutation(images).apply(pt.coords));
  } while (std::next_permutation(images.begin(), images.end()));
  return orbit;
}

bool is_stabilized_by(const Permutation& perm, const OrbitPoint& pt) {
  const std::uint64_t q = pt.partition.q();
  if (perm.size() != q)
    throw Error(Errc::DimMismatch, "permutation degree differs from q");
  const bool fixes_coords = perm.apply(pt.coords) == pt.coords;
  bool preserves_blocks = true;
  for (std::uint64_t i = 1; i <= q; ++i) {
    if (pt.partition.block_of(perm(i)) != pt.partition.block_of(i)) {
      preserves_blocks = false;
      break;
    }
  }
  if (fixes_coords != preserves_blocks)
    throw std::logic_error("stabilizer test disagrees with block preservation");
  return fixes_coords;
}

bool proportional(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size())
    throw Error(Errc::DimMismatch, "vectors of different length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a[i] * b[j] != a[j] * b[i])
        return false;
    }
  }
  return true;
}

std::pair<OrbitPoint, OrbitPoint> pair_points(const BlockPartition& partition) {
  if (partition.num_blocks() < 3)
    throw Error(Errc::NoSecondPoint,
                "with fewer than three blocks every admissible point lies on one line");
  const auto t = canonical_t(partition.num_blocks());
  OrbitPoint x = orbit_point(partition, t);
  auto t_y = t;
  while (std::next_permutation(t_y.begin(), t_y.end())) {
    OrbitPoint y = orbit_point(partition, t_y);
    if (!proportional(x.coords, y.coords))
      return {std::move(x), std::move(y)};
  }
  throw std::logic_error("no non-proportional companion point found");
}

}  // namespace sylow
