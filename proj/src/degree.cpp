#include "sylow/degree.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <future>
#include <numbers>
#include <string>
#include <unordered_map>

#include "sylow/arith.hpp"

namespace sylow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResidualLimit = 0.1;
constexpr std::size_t kMaxCircleSamples = std::size_t{1} << 22;
constexpr double kMaxImageEdge = 0.5;  // chordal
constexpr double kMinDomainEdge = 1e-5;

DegreeEstimate make_estimate(double raw, int level) {
  DegreeEstimate e;
  e.raw = raw;
  e.rounded = std::lround(raw);
  e.residual = std::abs(raw - static_cast<double>(e.rounded));
  e.level = level;
  return e;
}

void require_dim(const SphereMap& f, int dim) {
  if (f.sphere_dim() != dim)
    throw Error(Errc::DimMismatch, "map '" + f.label() + "' lives on S^" +
                                       std::to_string(f.sphere_dim()) + ", engine expects S^" +
                                       std::to_string(dim));
}

Vec midpoint(const Vec& a, const Vec& b) {
  Vec m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    m[i] = a[i] + b[i];
  return normalize(std::move(m));
}

double chord(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Smallest level whose cells, of diameter base / 2^level, satisfy diameter * hint < pi/2.
int level_from_hint(const SphereMap& f, double base) {
  const double hint = f.lipschitz_hint().value_or(1.0);
  int level = 0;
  while (level < 30 && base / std::ldexp(1.0, level) * hint >= kPi / 2.0)
    ++level;
  return level;
}

template <class LevelFn>
DegreeEstimate refine_until_stable(const SphereMap& f, const DegreeOptions& opts, int start,
                                   LevelFn&& at_level) {
  if (opts.max_level < 1)
    throw Error(Errc::InvalidArgument, "max level must be at least 1");
  int level = opts.start_level >= 0 ? opts.start_level : start;
  level = std::clamp(level, 0, opts.max_level - 1);
  DegreeEstimate prev = make_estimate(at_level(level), level);
  while (level < opts.max_level) {
    ++level;
    DegreeEstimate cur = make_estimate(at_level(level), level);
    if (cur.rounded == prev.rounded && cur.residual < kResidualLimit &&
        prev.residual < kResidualLimit) {
      cur.stable = true;
      return cur;
    }
    prev = cur;
  }
  throw NoConvergenceError("degree of '" + f.label() + "' did not stabilize by level " +
                               std::to_string(opts.max_level) + " (last raw " +
                               std::to_string(prev.raw) + ")",
                           prev);
}

// ---------------------------------------------------------------------------
// S^1

// Total angle swept by f around n uniform samples; nullopt if undersampled.
std::optional<double> winding(const SphereMap& f, std::size_t n) {
  double total = 0.0;
  Vec first = f.apply(Vec{1.0, 0.0});
  Vec prev = first;
  for (std::size_t i = 1; i <= n; ++i) {
    Vec cur;
    if (i == n) {
      cur = first;
    } else {
      const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
      cur = f.apply(Vec{std::cos(t), std::sin(t)});
    }
    const double step = std::atan2(prev[0] * cur[1] - prev[1] * cur[0], prev[0] * cur[0] + prev[1] * cur[1]);
    if (std::abs(step) >= kPi / 2.0)
      return std::nullopt;
    total += step;
    prev = std::move(cur);
  }
  return total / (2.0 * kPi);
}

// ---------------------------------------------------------------------------
// S^2

struct Tri {
  Vec a, b, c;
};

double det3(const Vec& a, const Vec& b, const Vec& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// Signed area of the geodesic triangle abc.
double solid_angle(const Vec& a, const Vec& b, const Vec& c) {
  return 2.0 * std::atan2(det3(a, b, c), 1.0 + dot(a, b) + dot(b, c) + dot(c, a));
}

std::vector<Tri> icosahedron() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec> v = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
                        {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v)
    p = normalize(p);
  const int faces[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                            {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                            {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                            {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  std::vector<Tri> tris;
  for (const auto& f : faces) {
    Tri tri{v[f[0]], v[f[1]], v[f[2]]};
    if (det3(tri.a, tri.b, tri.c) < 0.0)
      std::swap(tri.b, tri.c);
    tris.push_back(std::move(tri));
  }
  return tris;
}

// Indexed triangle mesh on S^2 carrying f at every vertex. Adaptive splits
// leave hanging midpoints; each leaf integrates over its full boundary
// polygon so that shared edges cancel exactly.
class SphereMesh {
public:
  explicit SphereMesh(const SphereMap& f) : f_(f) {}

  int add_vertex(Vec x) {
    fx_.push_back(f_.apply(x));
    x_.push_back(std::move(x));
    return static_cast<int>(x_.size()) - 1;
  }

  int midpoint_of(int i, int j) {
    const auto key = edge_key(i, j);
    if (const auto it = mid_.find(key); it != mid_.end())
      return it->second;
    const int m = add_vertex(midpoint(x_[static_cast<std::size_t>(i)], x_[static_cast<std::size_t>(j)]));
    mid_.emplace(key, m);
    return m;
  }

  std::array<int, 3> child(const std::array<int, 3>& t, int k, const std::array<int, 3>& m) const {
    switch (k) {
    case 0:
      return {t[0], m[0], m[2]};
    case 1:
      return {m[0], t[1], m[1]};
    case 2:
      return {m[2], m[1], t[2]};
    default:
      return {m[0], m[1], m[2]};
    }
  }

  std::vector<std::array<int, 3>> red_split(const std::array<int, 3>& t) {
    const std::array<int, 3> m{midpoint_of(t[0], t[1]), midpoint_of(t[1], t[2]), midpoint_of(t[2], t[0])};
    return {child(t, 0, m), child(t, 1, m), child(t, 2, m), child(t, 3, m)};
  }

  bool needs_split(const std::array<int, 3>& t) const {
    for (int e = 0; e < 3; ++e) {
      const auto i = static_cast<std::size_t>(t[static_cast<std::size_t>(e)]);
      const auto j = static_cast<std::size_t>(t[static_cast<std::size_t>((e + 1) % 3)]);
      if (chord(fx_[i], fx_[j]) > kMaxImageEdge && chord(x_[i], x_[j]) > kMinDomainEdge)
        return true;
    }
    return false;
  }

  void boundary(int i, int j, std::vector<int>& out) const {
    if (const auto it = mid_.find(edge_key(i, j)); it != mid_.end()) {
      boundary(i, it->second, out);
      boundary(it->second, j, out);
      return;
    }
    out.push_back(i);
  }

  double leaf_area(const std::array<int, 3>& t) const {
    std::vector<int> poly;
    boundary(t[0], t[1], poly);
    boundary(t[1], t[2], poly);
    boundary(t[2], t[0], poly);
    double area = 0.0;
    const Vec& apex = fx_[static_cast<std::size_t>(poly[0])];
    for (std::size_t k = 1; k + 1 < poly.size(); ++k)
      area += solid_angle(apex, fx_[static_cast<std::size_t>(poly[k])],
                          fx_[static_cast<std::size_t>(poly[k + 1])]);
    return area;
  }

private:
  static std::uint64_t edge_key(int i, int j) {
    const auto lo = static_cast<std::uint64_t>(std::min(i, j));
    const auto hi = static_cast<std::uint64_t>(std::max(i, j));
    return (lo << 32) | hi;
  }

  const SphereMap& f_;
  std::vector<Vec> x_, fx_;
  std::unordered_map<std::uint64_t, int> mid_;
};

double mesh_degree(const SphereMap& f, int level) {
  SphereMesh mesh(f);
  std::vector<std::array<int, 3>> tris;
  {
    const auto base = icosahedron();
    std::vector<Vec> seen;
    auto index_of = [&](const Vec& v) {
      for (std::size_t i = 0; i < seen.size(); ++i) {
        if (chord(seen[i], v) < 1e-12)
          return static_cast<int>(i);
      }
      seen.push_back(v);
      return mesh.add_vertex(v);
    };
    for (const auto& t : base)
      tris.push_back({index_of(t.a), index_of(t.b), index_of(t.c)});
  }
  for (int l = 0; l < level; ++l) {
    std::vector<std::array<int, 3>> next;
    next.reserve(tris.size() * 4);
    for (const auto& t : tris) {
      for (const auto& c : mesh.red_split(t))
        next.push_back(c);
    }
    tris = std::move(next);
  }
  std::vector<std::array<int, 3>> leaves;
  while (!tris.empty()) {
    const auto t = tris.back();
    tris.pop_back();
    if (!mesh.needs_split(t)) {
      leaves.push_back(t);
      continue;
    }
    for (const auto& c : mesh.red_split(t))
      tris.push_back(c);
  }
  std::sort(leaves.begin(), leaves.end());
  double area = 0.0;
  for (const auto& t : leaves)
    area += mesh.leaf_area(t);
  return area / (4.0 * kPi);
}

// ---------------------------------------------------------------------------
// S^3

using Tet = std::array<Vec, 4>;

double det4(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  const double m01 = a[0] * b[1] - a[1] * b[0];
  const double m02 = a[0] * b[2] - a[2] * b[0];
  const double m03 = a[0] * b[3] - a[3] * b[0];
  const double m12 = a[1] * b[2] - a[2] * b[1];
  const double m13 = a[1] * b[3] - a[3] * b[1];
  const double m23 = a[2] * b[3] - a[3] * b[2];
  const double n01 = c[0] * d[1] - c[1] * d[0];
  const double n02 = c[0] * d[2] - c[2] * d[0];
  const double n03 = c[0] * d[3] - c[3] * d[0];
  const double n12 = c[1] * d[2] - c[2] * d[1];
  const double n13 = c[1] * d[3] - c[3] * d[1];
  const double n23 = c[2] * d[3] - c[3] * d[2];
  return m01 * n23 - m02 * n13 + m03 * n12 + m12 * n03 - m13 * n02 + m23 * n01;
}

std::vector<Tet> sixteen_cell() {
  std::vector<Tet> cells;
  for (int mask = 0; mask < 16; ++mask) {
    Tet t;
    for (int i = 0; i < 4; ++i) {
      t[i] = Vec(4, 0.0);
      t[i][i] = (mask >> i) & 1 ? -1.0 : 1.0;
    }
    if (det4(t[0], t[1], t[2], t[3]) < 0.0)
      std::swap(t[2], t[3]);
    cells.push_back(std::move(t));
  }
  return cells;
}

struct VolumeSums {
  double image = 0.0;
  double reference = 0.0;
};

void tet_volumes(const SphereMap& f, const Tet& t, const Tet& ft, int levels, VolumeSums& acc) {
  if (levels == 0) {
    acc.image += det4(ft[0], ft[1], ft[2], ft[3]);
    acc.reference += det4(t[0], t[1], t[2], t[3]);
    return;
  }
  // Midpoints x_ij, i < j, in the order 01 02 03 12 13 23.
  constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::array<Vec, 10> x, fx;
  for (int i = 0; i < 4; ++i) {
    x[i] = t[i];
    fx[i] = ft[i];
  }
  for (int k = 0; k < 6; ++k) {
    x[4 + k] = midpoint(t[pairs[k][0]], t[pairs[k][1]]);
    fx[4 + k] = f.apply(x[4 + k]);
  }
  enum { X01 = 4, X02, X03, X12, X13, X23 };
  constexpr int children[8][4] = {{0, X01, X02, X03},   {X01, 1, X12, X13},   {X02, X12, 2, X23},
                                  {X03, X13, X23, 3},   {X01, X02, X03, X13}, {X01, X02, X12, X13},
                                  {X02, X03, X13, X23}, {X02, X12, X13, X23}};
  for (const auto& ch : children) {
    Tet ct{x[ch[0]], x[ch[1]], x[ch[2]], x[ch[3]]};
    Tet cf{fx[ch[0]], fx[ch[1]], fx[ch[2]], fx[ch[3]]};
    if (det4(ct[0], ct[1], ct[2], ct[3]) < 0.0) {
      std::swap(ct[2], ct[3]);
      std::swap(cf[2], cf[3]);
    }
    tet_volumes(f, ct, cf, levels - 1, acc);
  }
}

// ---------------------------------------------------------------------------
// Congruences

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix out(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j)
        out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

Matrix mat_identity(std::size_t n) {
  Matrix out(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    out[i][i] = 1.0;
  return out;
}

Matrix mat_pow(const Matrix& m, std::uint64_t e) {
  Matrix result = mat_identity(m.size());
  Matrix base = m;
  while (e > 0) {
    if (e & 1)
      result = mat_mul(result, base);
    base = mat_mul(base, base);
    e >>= 1;
  }
  return result;
}

// Orthonormal basis of the vectors fixed by the cyclic group generated by h.
std::vector<Vec> fixed_basis(const Matrix& h, std::uint64_t order) {
  const std::size_t n = h.size();
  Matrix proj(n, Vec(n, 0.0));
  Matrix power = mat_identity(n);
  for (std::uint64_t j = 0; j < order; ++j) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c)
        proj[r][c] += power[r][c] / static_cast<double>(order);
    }
    power = mat_mul(power, h);
  }
  std::vector<Vec> basis;
  for (std::size_t c = 0; c < n; ++c) {
    Vec v(n);
    for (std::size_t r = 0; r < n; ++r)
      v[r] = proj[r][c];
    for (const auto& b : basis) {
      const double along = dot(v, b);
      for (std::size_t i = 0; i < n; ++i)
        v[i] -= along * b[i];
    }
    const double len = norm(v);
    if (len > 1e-8) {
      for (auto& x : v)
        x /= len;
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

long mod(long a, long p) { return ((a % p) + p) % p; }

}  // namespace

DegreeEstimate degree_s0(const SphereMap& f) {
  require_dim(f, 0);
  const double plus = f.apply(Vec{1.0})[0];
  const double minus = f.apply(Vec{-1.0})[0];
  auto sign = [](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); };
  DegreeEstimate e = make_estimate((sign(plus) - sign(minus)) / 2.0, 0);
  e.stable = true;
  return e;
}

DegreeEstimate degree_s1(const SphereMap& f, std::size_t samples) {
  require_dim(f, 1);
  std::size_t n = samples;
  if (n == 0) {
    n = 64;
    const double hint = f.lipschitz_hint().value_or(1.0);
    while (n < kMaxCircleSamples && static_cast<double>(n) < 8.0 * hint)
      n *= 2;
  }
  std::optional<long> prev;
  DegreeEstimate last;
  for (; n <= kMaxCircleSamples; n *= 2) {
    const auto w = winding(f, n);
    if (!w) {
      prev.reset();
      continue;
    }
    last = make_estimate(*w, static_cast<int>(std::bit_width(n)) - 1);
    if (prev == last.rounded && last.residual < kResidualLimit) {
      last.stable = true;
      return last;
    }
    prev = last.rounded;
  }
  throw NoConvergenceError("winding number of '" + f.label() + "' did not stabilize within " +
                               std::to_string(kMaxCircleSamples) + " samples",
                           last);
}

DegreeEstimate degree_s2(const SphereMap& f, const DegreeOptions& opts) {
  require_dim(f, 2);
  const int start = level_from_hint(f, 1.11);
  return refine_until_stable(f, opts, start, [&](int level) { return mesh_degree(f, level); });
}

DegreeEstimate degree_s3(const SphereMap& f, const DegreeOptions& opts) {
  require_dim(f, 3);
  std::vector<std::pair<Tet, Tet>> cells;
  for (const auto& t : sixteen_cell())
    cells.push_back({t, Tet{f.apply(t[0]), f.apply(t[1]), f.apply(t[2]), f.apply(t[3])}});
  const int start = std::max(2, level_from_hint(f, kPi / 2.0));
  return refine_until_stable(f, opts, start, [&](int level) {
    std::vector<VolumeSums> sums(cells.size());
    std::vector<std::future<void>> jobs;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      jobs.push_back(std::async(std::launch::async, [&, i] {
        tet_volumes(f, cells[i].first, cells[i].second, level, sums[i]);
      }));
    }
    VolumeSums total;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      jobs[i].get();
      total.image += sums[i].image;
      total.reference += sums[i].reference;
    }
    return total.image / total.reference;
  });
}

DegreeEstimate compute_degree(const SphereMap& f, const DegreeOptions& opts) {
  switch (f.sphere_dim()) {
  case 0:
    return degree_s0(f);
  case 1: {
    // Levels translate to sample counts 2^level for the winding engine.
    if (opts.start_level >= 0)
      return degree_s1(f, std::size_t{1} << std::min(opts.start_level, 22));
    return degree_s1(f);
  }
  case 2:
    return degree_s2(f, opts);
  case 3:
    return degree_s3(f, opts);
  default:
    throw Error(Errc::DimMismatch,
                "no degree engine for S^" + std::to_string(f.sphere_dim()));
  }
}

CongruenceReport degree_congruence_check(const SphereMap& f, std::uint64_t p,
                                         const DegreeOptions& opts, std::uint64_t seed,
                                         std::size_t samples) {
  if (!is_prime(p))
    throw Error(Errc::InvalidPrime, std::to_string(p) + " is not prime");
  if (!f.action())
    throw Error(Errc::NoAction, "map '" + f.label() + "' carries no group action");

  CongruenceReport report;
  report.p = p;
  report.equivariance_deviation = check_equivariance(f, samples, seed);
  if (!(report.equivariance_deviation < kEquivarianceThreshold))
    throw Error(Errc::NotEquivariant, "map '" + f.label() + "' deviates by " +
                                          std::to_string(report.equivariance_deviation));

  const auto& action = *f.action();
  std::uint64_t sylow_order = 1;
  std::uint64_t rest = action.order;
  while (rest % p == 0) {
    rest /= p;
    sylow_order *= p;
  }
  const Matrix h = mat_pow(action.generator, rest);
  const auto basis = fixed_basis(h, sylow_order);
  report.fixed_dim = basis.size();
  report.degree = compute_degree(f, opts).rounded;

  if (basis.empty()) {
    report.expected_residue = 1;
  } else {
    const std::size_t n = static_cast<std::size_t>(f.sphere_dim()) + 1;
    SphereMap restricted(
        static_cast<int>(basis.size()) - 1,
        [f, basis, n](const Vec& y) {
          Vec x(n, 0.0);
          for (std::size_t k = 0; k < basis.size(); ++k) {
            for (std::size_t i = 0; i < n; ++i)
              x[i] += y[k] * basis[k][i];
          }
          const Vec fx = f.apply(x);
          Vec out(basis.size());
          for (std::size_t k = 0; k < basis.size(); ++k)
            out[k] = dot(fx, basis[k]);
          return normalize(std::move(out));
        },
        "fixed(" + f.label() + ")", f.lipschitz_hint());
    report.restricted_degree = compute_degree(restricted, opts).rounded;
    report.expected_residue = *report.restricted_degree;
  }
  const long pl = static_cast<long>(p);
  report.congruent = mod(report.degree, pl) == mod(report.expected_residue, pl);
  return report;
}

}  // namespace sylow
