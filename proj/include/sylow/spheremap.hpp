#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sylow {

using Vec = std::vector<double>;
using Matrix = std::vector<Vec>;  // square, row-major

inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kPoleThreshold = 1e-10;
inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// A point of the unit sphere S^dim in R^{dim+1}.
class UnitVector {
public:
  /// Throws Error(NotUnit) unless | |coords| - 1 | <= 1e-12.
  explicit UnitVector(Vec coords);

  /// Rescales a non-zero vector onto the sphere.
  static UnitVector normalized(Vec coords);

  const Vec& coords() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  int dim() const noexcept { return static_cast<int>(coords_.size()) - 1; }
  double operator[](std::size_t i) const { return coords_[i]; }

private:
  Vec coords_;
};

/// A cyclic group acting orthogonally on R^{dim+1}.
struct CyclicAction {
  std::uint64_t order = 1;
  Matrix generator;
};

/// Continuous self-map of a unit sphere. Copies share the underlying function.
class SphereMap {
public:
  using Fn = std::function<Vec(const Vec&)>;

  SphereMap(int sphere_dim, Fn fn, std::string label,
            std::optional<double> lipschitz_hint = std::nullopt);

  int sphere_dim() const noexcept { return dim_; }
  const std::string& label() const noexcept { return label_; }
  std::optional<double> lipschitz_hint() const noexcept { return hint_; }
  const std::optional<CyclicAction>& action() const noexcept { return action_; }

  SphereMap with_action(CyclicAction action) const;

  /// Checked evaluation.
  UnitVector operator()(const UnitVector& x) const;

  /// Unchecked evaluation for engines that already hold unit vectors.
  Vec apply(const Vec& x) const { return fn_(x); }

private:
  int dim_;
  Fn fn_;
  std::string label_;
  std::optional<double> hint_;
  std::optional<CyclicAction> action_;
};

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
Vec normalize(Vec v);
Vec mat_vec(const Matrix& m, const Vec& v);

/// z^r u where v = z u in a plane through u and v.
Vec rho(long r, const Vec& u, const Vec& v);
UnitVector rho(long r, const UnitVector& u, const UnitVector& v);

/// v -> rho_r(u, v).
SphereMap rho_slice(long r, const UnitVector& u);

/// x -> rho_r(f(x), g(x)).
SphereMap combine(long r, const SphereMap& f, const SphereMap& g);

/// (cos t x_A, sin t x_B) -> (cos t f(x_A), sin t g(x_B)) on S^{a+b+1}.
SphereMap join_map(const SphereMap& f, const SphereMap& g);

SphereMap identity_map(int dim);
SphereMap antipodal(int dim);
SphereMap reflection(const UnitVector& axis);
/// z -> z^r on S^1.
SphereMap power_map(long r);

struct McDuffSpec {
  int sphere_dim = 2;
  std::vector<UnitVector> points;
  std::optional<double> epsilon;     // default: 0.49 * min pairwise distance, at most pi/8
  std::vector<long> local_degrees;   // empty means degree 1 at every point

  double resolved_epsilon() const;
  /// Throws Error(InvalidSpec).
  void validate() const;
};

/// Identity outside the epsilon-balls around the points; inside, the
/// compactified tangent-fibre construction with local degrees m_y.
/// Degree 1 - sum m_y.
SphereMap mcduff_map(const McDuffSpec& spec);

/// C6 acting on R (+) C by (-1, rotation by 2 pi / 3).
CyclicAction c6_action();
/// Rotation by 2 pi / order on R^2.
CyclicAction rotation_action(std::uint64_t order);

/// join(t -> sign t, z -> z^{3r+1}) on S^2 with the C6 action attached.
SphereMap equivariant_join_family(long r, int sign);

/// max ||f(g x) - g f(x)|| over seeded random samples. Error(NoAction)
/// when the map carries no action.
double check_equivariance(const SphereMap& f, std::size_t samples,
                          std::uint64_t seed = kDefaultSeed);

inline constexpr double kEquivarianceThreshold = 1e-9;

/// One unit vector per line, comma-separated decimals.
std::vector<UnitVector> read_points_file(const std::filesystem::path& path);

/// Builds a map from the construction grammar:
///   rho:r=<int>,u=<csv>          power:r=<int>
///   id:dim=<n>   antipodal:dim=<n>   reflection:u=<csv>
///   join(<spec>,<spec>)           combine:r=<int>(<spec>,<spec>)
///   mcduff:points=<file>[,eps=<float>][,degrees=<csv>]
///   cjoin:r=<int>,sign=<+1|-1>
/// Relative point files resolve against base_dir. Error(ParseError) on bad input.
SphereMap parse_map_spec(std::string_view spec, const std::filesystem::path& base_dir = ".");

}  // namespace sylow
