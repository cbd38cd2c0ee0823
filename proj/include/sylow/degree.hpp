#pragma once

#include <cstdint>
#include <optional>

#include "sylow/error.hpp"
#include "sylow/spheremap.hpp"

namespace sylow {

struct DegreeEstimate {
  double raw = 0.0;
  long rounded = 0;
  double residual = 0.0;
  int level = 0;
  bool stable = false;
};

struct DegreeOptions {
  int start_level = -1;  // -1: derived from the map's Lipschitz hint
  int max_level = 8;
};

class NoConvergenceError : public Error {
public:
  NoConvergenceError(const std::string& what, DegreeEstimate last)
      : Error(Errc::NoConvergence, what), last_(last) {}

  const DegreeEstimate& last() const noexcept { return last_; }

private:
  DegreeEstimate last_;
};

/// Winding number of f around a uniform loop. Samples double until no
/// increment reaches pi/2 and two consecutive sample counts agree.
DegreeEstimate degree_s1(const SphereMap& f, std::size_t samples = 0);

/// Signed geodesic-triangle areas of the image of a subdivided icosahedron,
/// divided by 4 pi. Image triangles that are too large are split locally.
DegreeEstimate degree_s2(const SphereMap& f, const DegreeOptions& opts = {});

/// Oriented determinants of image simplices over a refined 16-cell,
/// normalized by the same sum for the identity at that level.
DegreeEstimate degree_s3(const SphereMap& f, const DegreeOptions& opts = {});

/// Self-maps of S^0 = {+1, -1}.
DegreeEstimate degree_s0(const SphereMap& f);

/// Dispatches on the sphere dimension (0 to 3).
DegreeEstimate compute_degree(const SphereMap& f, const DegreeOptions& opts = {});

struct CongruenceReport {
  std::uint64_t p = 0;
  long degree = 0;
  std::size_t fixed_dim = 0;              // dimension of the fixed subspace of the Sylow p-subgroup
  std::optional<long> restricted_degree;  // absent when the fixed sphere is empty
  long expected_residue = 1;
  bool congruent = false;
  double equivariance_deviation = 0.0;
};

/// deg f = deg f^H (mod p) for H the Sylow p-subgroup of the attached cyclic
/// action, or deg f = 1 (mod p) when V^H = 0. Error(NotEquivariant) when f
/// fails check_equivariance.
CongruenceReport degree_congruence_check(const SphereMap& f, std::uint64_t p,
                                         const DegreeOptions& opts = {},
                                         std::uint64_t seed = kDefaultSeed,
                                         std::size_t samples = 256);

}  // namespace sylow
