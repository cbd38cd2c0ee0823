#include "sylow/spheremap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "sylow/error.hpp"

namespace sylow {

namespace {

constexpr double kPi = std::numbers::pi;

// Orthonormal basis of the orthogonal complement of a unit vector.
Matrix tangent_basis(const Vec& y) {
  const std::size_t n = y.size();
  Matrix basis;
  for (std::size_t e = 0; e < n && basis.size() + 1 < n; ++e) {
    Vec v(n, 0.0);
    v[e] = 1.0;
    const double along = dot(v, y);
    for (std::size_t i = 0; i < n; ++i)
      v[i] -= along * y[i];
    for (const auto& b : basis) {
      const double c = dot(v, b);
      for (std::size_t i = 0; i < n; ++i)
        v[i] -= c * b[i];
    }
    const double len = norm(v);
    if (len > 1e-6) {
      for (auto& c : v)
        c /= len;
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

double geodesic_distance(const Vec& a, const Vec& b) {
  Vec diff(a.size()), sum(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff[i] = a[i] - b[i];
    sum[i] = a[i] + b[i];
  }
  return 2.0 * std::atan2(norm(diff), norm(sum));
}

}  // namespace

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec normalize(Vec v) {
  const double len = norm(v);
  if (!(len > 0.0) || !std::isfinite(len))
    throw Error(Errc::NotUnit, "cannot normalize a zero or non-finite vector");
  for (auto& c : v)
    c /= len;
  return v;
}

Vec mat_vec(const Matrix& m, const Vec& v) {
  Vec out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    out[i] = dot(m[i], v);
  return out;
}

UnitVector::UnitVector(Vec coords) : coords_(std::move(coords)) {
  if (coords_.empty())
    throw Error(Errc::NotUnit, "empty vector");
  if (std::abs(norm(coords_) - 1.0) > kUnitTolerance)
    throw Error(Errc::NotUnit, "vector is not of unit length");
}

UnitVector UnitVector::normalized(Vec coords) { return UnitVector(normalize(std::move(coords))); }

SphereMap::SphereMap(int sphere_dim, Fn fn, std::string label, std::optional<double> lipschitz_hint)
    : dim_(sphere_dim), fn_(std::move(fn)), label_(std::move(label)), hint_(lipschitz_hint) {
  if (sphere_dim < 0)
    throw Error(Errc::InvalidArgument, "negative sphere dimension");
}

SphereMap SphereMap::with_action(CyclicAction action) const {
  if (action.generator.size() != static_cast<std::size_t>(dim_ + 1))
    throw Error(Errc::DimMismatch, "action does not act on the map's ambient space");
  SphereMap copy = *this;
  copy.action_ = std::move(action);
  return copy;
}

UnitVector SphereMap::operator()(const UnitVector& x) const {
  if (x.dim() != dim_)
    throw Error(Errc::DimMismatch, "point on S^" + std::to_string(x.dim()) + ", map on S^" +
                                       std::to_string(dim_));
  return UnitVector(normalize(fn_(x.coords())));
}

// ---------------------------------------------------------------------------

Vec rho(long r, const Vec& u, const Vec& v) {
  const double c = dot(u, v);
  if (1.0 - c <= kPoleThreshold)
    return u;
  if (1.0 + c <= kPoleThreshold) {
    if (r % 2 == 0)
      return u;
    Vec out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      out[i] = -u[i];
    return out;
  }
  Vec w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    w[i] = v[i] - c * u[i];
  const double s = norm(w);
  for (auto& x : w)
    x /= s;
  const double theta = std::atan2(s, c);
  const double a = std::cos(static_cast<double>(r) * theta);
  const double b = std::sin(static_cast<double>(r) * theta);
  Vec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] = a * u[i] + b * w[i];
  return normalize(std::move(out));
}

UnitVector rho(long r, const UnitVector& u, const UnitVector& v) {
  if (u.size() != v.size())
    throw Error(Errc::DimMismatch, "rho needs both points on the same sphere");
  if (u.dim() < 1)
    throw Error(Errc::DimMismatch, "rho needs a sphere of dimension >= 1");
  return UnitVector(rho(r, u.coords(), v.coords()));
}

SphereMap rho_slice(long r, const UnitVector& u) {
  if (u.dim() < 1)
    throw Error(Errc::DimMismatch, "rho needs a sphere of dimension >= 1");
  Vec base = u.coords();
  return SphereMap(
      u.dim(), [r, base](const Vec& v) { return rho(r, base, v); },
      "rho(" + std::to_string(r) + ")", static_cast<double>(std::abs(r)) + 1.0);
}

SphereMap combine(long r, const SphereMap& f, const SphereMap& g) {
  if (f.sphere_dim() != g.sphere_dim())
    throw Error(Errc::DimMismatch, "combine needs maps on the same sphere");
  if (f.sphere_dim() < 1)
    throw Error(Errc::DimMismatch, "combine needs a sphere of dimension >= 1");
  const double hf = f.lipschitz_hint().value_or(1.0);
  const double hg = g.lipschitz_hint().value_or(1.0);
  const double hint = (std::abs(r) + std::abs(1 - r) + 1.0) * std::max(hf, hg);
  return SphereMap(
      f.sphere_dim(), [r, f, g](const Vec& x) { return rho(r, f.apply(x), g.apply(x)); },
      "combine(" + std::to_string(r) + "," + f.label() + "," + g.label() + ")", hint);
}

SphereMap join_map(const SphereMap& f, const SphereMap& g) {
  const std::size_t na = static_cast<std::size_t>(f.sphere_dim()) + 1;
  const std::size_t nb = static_cast<std::size_t>(g.sphere_dim()) + 1;
  const double hint =
      std::max({f.lipschitz_hint().value_or(1.0), g.lipschitz_hint().value_or(1.0), 1.0});
  auto fn = [f, g, na, nb](const Vec& x) {
    Vec xa(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(na));
    Vec xb(x.begin() + static_cast<std::ptrdiff_t>(na), x.end());
    const double ca = norm(xa);
    const double cb = norm(xb);
    Vec out(na + nb, 0.0);
    if (ca > 0.0) {
      for (auto& c : xa)
        c /= ca;
      const Vec fa = f.apply(xa);
      for (std::size_t i = 0; i < na; ++i)
        out[i] = ca * fa[i];
    }
    if (cb > 0.0) {
      for (auto& c : xb)
        c /= cb;
      const Vec gb = g.apply(xb);
      for (std::size_t i = 0; i < nb; ++i)
        out[na + i] = cb * gb[i];
    }
    return normalize(std::move(out));
  };
  return SphereMap(f.sphere_dim() + g.sphere_dim() + 1, fn,
                   "join(" + f.label() + "," + g.label() + ")", hint);
}

SphereMap identity_map(int dim) {
  return SphereMap(dim, [](const Vec& x) { return x; }, "id:dim=" + std::to_string(dim), 1.0);
}

SphereMap antipodal(int dim) {
  return SphereMap(
      dim,
      [](const Vec& x) {
        Vec out(x);
        for (auto& c : out)
          c = -c;
        return out;
      },
      "antipodal:dim=" + std::to_string(dim), 1.0);
}

SphereMap reflection(const UnitVector& axis) {
  Vec u = axis.coords();
  return SphereMap(
      axis.dim(),
      [u](const Vec& v) {
        const double c = 2.0 * dot(v, u);
        Vec out(v);
        for (std::size_t i = 0; i < out.size(); ++i)
          out[i] -= c * u[i];
        return out;
      },
      "reflection", 1.0);
}

SphereMap power_map(long r) {
  return SphereMap(
      1,
      [r](const Vec& x) {
        const double phi = std::atan2(x[1], x[0]) * static_cast<double>(r);
        return Vec{std::cos(phi), std::sin(phi)};
      },
      "power:r=" + std::to_string(r), std::max(1.0, static_cast<double>(std::abs(r))));
}

// ---------------------------------------------------------------------------
// McDuff maps

double McDuffSpec::resolved_epsilon() const {
  if (epsilon)
    return *epsilon;
  double min_dist = kPi;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j)
      min_dist = std::min(min_dist, geodesic_distance(points[i].coords(), points[j].coords()));
  }
  return std::min(0.49 * min_dist, kPi / 8.0);
}

void McDuffSpec::validate() const {
  if (sphere_dim < 1)
    throw Error(Errc::InvalidSpec, "McDuff maps need a sphere of dimension >= 1");
  for (const auto& y : points) {
    if (y.dim() != sphere_dim)
      throw Error(Errc::InvalidSpec, "point not on S^" + std::to_string(sphere_dim));
  }
  if (!local_degrees.empty() && local_degrees.size() != points.size())
    throw Error(Errc::InvalidSpec, "need one local degree per point");
  if (sphere_dim == 1) {
    for (long m : local_degrees) {
      if (m < -1 || m > 1)
        throw Error(Errc::InvalidSpec, "on S^1 only local degrees -1, 0, 1 are modelled");
    }
  }
  const double eps = resolved_epsilon();
  if (!(eps > 0.0) || eps >= kPi / 4.0)
    throw Error(Errc::InvalidSpec, "epsilon must lie in (0, pi/4)");
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (geodesic_distance(points[i].coords(), points[j].coords()) <= 2.0 * eps)
        throw Error(Errc::InvalidSpec, "balls around the points overlap");
    }
  }
}

namespace {

// Pointed self-map of the compactified tangent fibre with degree m, in
// tangent coordinates. Returns nullopt for the point at infinity.
std::optional<Vec> local_model(long m, Vec c) {
  if (m == 1)
    return c;
  if (c.size() == 1) {
    if (m == 0)
      return std::nullopt;
    c[0] = -c[0];
    return c;
  }
  const double radius = std::hypot(c[0], c[1]);
  if (radius > 0.0) {
    const double phi = std::atan2(c[1], c[0]) * static_cast<double>(m);
    c[0] = radius * std::cos(phi);
    c[1] = radius * std::sin(phi);
  }
  return c;
}

struct McDuffBall {
  Vec centre;
  Matrix basis;  // orthonormal basis of the tangent space at the centre
  long degree;
};

}  // namespace

SphereMap mcduff_map(const McDuffSpec& spec) {
  spec.validate();
  const double eps = spec.resolved_epsilon();
  std::vector<McDuffBall> balls;
  for (std::size_t i = 0; i < spec.points.size(); ++i) {
    const Vec& y = spec.points[i].coords();
    balls.push_back({y, tangent_basis(y), spec.local_degrees.empty() ? 1 : spec.local_degrees[i]});
  }

  long total = 0;
  for (const auto& b : balls)
    total += b.degree;

  auto fn = [balls, eps](const Vec& x) -> Vec {
    for (const auto& ball : balls) {
      const double dist = geodesic_distance(ball.centre, x);
      if (dist >= eps)
        continue;
      const std::size_t n = x.size();
      const double s = dist / eps;

      // Unit tangent at the centre pointing towards x.
      Vec omega(n, 0.0);
      const double c = dot(x, ball.centre);
      for (std::size_t i = 0; i < n; ++i)
        omega[i] = x[i] - c * ball.centre[i];
      const double len = norm(omega);
      if (len > 0.0) {
        for (auto& v : omega)
          v /= len;
      }

      // psi(v) = v / sqrt(1 - |v|^2) with v = s * omega, in tangent coordinates.
      const double scale = s / std::sqrt(1.0 - s * s);
      Vec coords(ball.basis.size());
      for (std::size_t k = 0; k < ball.basis.size(); ++k)
        coords[k] = scale * dot(omega, ball.basis[k]);
      const auto mapped = local_model(ball.degree, std::move(coords));
      if (!mapped)
        return x;
      Vec w(n, 0.0);
      for (std::size_t k = 0; k < ball.basis.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i)
          w[i] += (*mapped)[k] * ball.basis[k][i];
      }

      // Parallel transport from the centre to x along the great circle.
      if (len > 0.0) {
        const double along = dot(w, omega);
        for (std::size_t i = 0; i < n; ++i) {
          const double moved = -std::sin(dist) * ball.centre[i] + std::cos(dist) * omega[i];
          w[i] += along * (moved - omega[i]);
        }
      }

      // Stereographic identification with the point at infinity sent to x.
      const double quarter = dot(w, w) / 4.0;
      Vec out(n);
      for (std::size_t i = 0; i < n; ++i)
        out[i] = ((quarter - 1.0) * x[i] + w[i]) / (quarter + 1.0);
      return normalize(std::move(out));
    }
    return x;
  };
  return SphereMap(spec.sphere_dim, fn,
                   "mcduff(d=" + std::to_string(balls.size()) + ",sum_m=" + std::to_string(total) +
                       ")",
                   4.0 / eps);
}

// ---------------------------------------------------------------------------
// Group actions

CyclicAction c6_action() {
  const double a = 2.0 * kPi / 3.0;
  return {6, Matrix{{-1.0, 0.0, 0.0}, {0.0, std::cos(a), -std::sin(a)}, {0.0, std::sin(a), std::cos(a)}}};
}

CyclicAction rotation_action(std::uint64_t order) {
  if (order == 0)
    throw Error(Errc::InvalidArgument, "group order must be positive");
  const double a = 2.0 * kPi / static_cast<double>(order);
  return {order, Matrix{{std::cos(a), -std::sin(a)}, {std::sin(a), std::cos(a)}}};
}

SphereMap equivariant_join_family(long r, int sign) {
  if (sign != 1 && sign != -1)
    throw Error(Errc::InvalidArgument, "sign must be +1 or -1");
  const SphereMap fibre = sign == 1 ? identity_map(0) : antipodal(0);
  SphereMap joined = join_map(fibre, power_map(3 * r + 1));
  return SphereMap(2, [joined](const Vec& x) { return joined.apply(x); },
                   "cjoin:r=" + std::to_string(r) + ",sign=" + (sign == 1 ? "+1" : "-1"),
                   joined.lipschitz_hint())
      .with_action(c6_action());
}

double check_equivariance(const SphereMap& f, std::size_t samples, std::uint64_t seed) {
  if (!f.action())
    throw Error(Errc::NoAction, "map '" + f.label() + "' carries no group action");
  const auto& g = f.action()->generator;
  const std::size_t n = static_cast<std::size_t>(f.sphere_dim()) + 1;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    Vec x(n);
    for (auto& c : x)
      c = normal(rng);
    x = normalize(std::move(x));
    const Vec lhs = f.apply(mat_vec(g, x));
    const Vec rhs = mat_vec(g, f.apply(x));
    Vec diff(n);
    for (std::size_t i = 0; i < n; ++i)
      diff[i] = lhs[i] - rhs[i];
    worst = std::max(worst, norm(diff));
  }
  return worst;
}

}  // namespace sylow
