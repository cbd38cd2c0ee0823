#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "sylow/error.hpp"
#include "sylow/spheremap.hpp"

using namespace sylow;

namespace {

constexpr double kPi = std::numbers::pi;

Vec random_unit(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  Vec v(n);
  for (auto& c : v)
    c = normal(rng);
  return normalize(v);
}

double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Vec neg(Vec v) {
  for (auto& c : v)
    c = -c;
  return v;
}

// Random orthogonal matrix by Gram-Schmidt on Gaussian columns.
Matrix random_orthogonal(std::mt19937_64& rng, std::size_t n) {
  Matrix cols;
  while (cols.size() < n) {
    Vec v = random_unit(rng, n);
    for (const auto& c : cols) {
      const double d = dot(v, c);
      for (std::size_t i = 0; i < n; ++i)
        v[i] -= d * c[i];
    }
    if (norm(v) > 1e-3)
      cols.push_back(normalize(v));
  }
  return cols;  // rows of an orthogonal matrix
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

// Reference for rho on S^1 via complex arithmetic: u^{1-r} v^r.
Vec rho_complex(long r, const Vec& u, const Vec& v) {
  const double phi_u = std::atan2(u[1], u[0]);
  double phi = std::atan2(v[1], v[0]) - phi_u;
  while (phi <= -kPi)
    phi += 2 * kPi;
  while (phi > kPi)
    phi -= 2 * kPi;
  const double out = phi_u + static_cast<double>(r) * phi;
  return {std::cos(out), std::sin(out)};
}

}  // namespace

TEST_CASE("unit vectors") {
  CHECK_NOTHROW(UnitVector({0.6, 0.8}));
  CHECK(code_of([] { UnitVector({1.0, 1.0}); }) == Errc::NotUnit);
  CHECK(code_of([] { UnitVector(Vec{}); }) == Errc::NotUnit);
  CHECK(UnitVector::normalized({3.0, 4.0})[1] == doctest::Approx(0.8));
  CHECK(code_of([] { UnitVector::normalized({0.0, 0.0}); }) == Errc::NotUnit);
}

TEST_CASE("rho basics") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const Vec u = random_unit(rng, 4), v = random_unit(rng, 4);
    CHECK(dist(rho(0, u, v), u) < 1e-12);
    CHECK(dist(rho(1, u, v), v) < 1e-12);
    CHECK(dist(rho(3, u, neg(u)), neg(u)) == 0.0);
    CHECK(dist(rho(2, u, neg(u)), u) == 0.0);
    CHECK(dist(rho(5, u, u), u) == 0.0);
  }
  const UnitVector one({1.0, 0.0}), i_unit({0.0, 1.0});
  const auto out = rho(3, one, i_unit);
  CHECK(out[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(out[1] == doctest::Approx(-1.0));
  CHECK(code_of([&] { rho(1, one, UnitVector({1.0, 0.0, 0.0})); }) == Errc::DimMismatch);
}

TEST_CASE("rho on S^1 matches complex powers") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Vec u = random_unit(rng, 2), v = random_unit(rng, 2);
    const long r = static_cast<long>(i % 11) - 5;
    REQUIRE(dist(rho(r, u, v), rho_complex(r, u, v)) < 1e-9);
  }
}

TEST_CASE("rho identities") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> small(-5, 5);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 3);
    const Vec u = random_unit(rng, n), v = random_unit(rng, n);
    const long r = small(rng), s = small(rng);
    INFO("r = " << r << ", s = " << s);
    REQUIRE(dist(rho(r, v, u), rho(1 - r, u, v)) < 1e-9);
    REQUIRE(dist(rho(r * s, u, v), rho(r, u, rho(s, u, v))) < 1e-9);
    const Matrix q = random_orthogonal(rng, n);
    REQUIRE(dist(rho(r, mat_vec(q, u), mat_vec(q, v)), mat_vec(q, rho(r, u, v))) < 1e-9);
  }
}

TEST_CASE("reflection and rho_{-1}") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const Vec u = random_unit(rng, 3), v = random_unit(rng, 3);
    const auto refl = reflection(UnitVector(u));
    CHECK(dist(neg(refl.apply(v)), rho(-1, u, v)) < 1e-12);
    CHECK(dist(antipodal(2).apply(antipodal(2).apply(v)), v) == 0.0);
  }
  const auto conj = power_map(-1);
  const Vec z = conj.apply({0.6, 0.8});
  CHECK(z[0] == doctest::Approx(0.6));
  CHECK(z[1] == doctest::Approx(-0.8));
}

TEST_CASE("combine") {
  std::mt19937_64 rng(5);
  const auto f = power_map(2), g = power_map(-3);
  const auto c0 = combine(0, f, g), c1 = combine(1, f, g);
  for (int i = 0; i < 100; ++i) {
    const Vec x = random_unit(rng, 2);
    CHECK(dist(c0.apply(x), f.apply(x)) < 1e-12);
    CHECK(dist(c1.apply(x), g.apply(x)) < 1e-12);
  }
  CHECK(code_of([&] { combine(1, f, identity_map(2)); }) == Errc::DimMismatch);
}

TEST_CASE("joins") {
  std::mt19937_64 rng(6);
  const auto id = join_map(identity_map(0), identity_map(1));
  CHECK(id.sphere_dim() == 2);
  for (int i = 0; i < 100; ++i) {
    const Vec x = random_unit(rng, 3);
    CHECK(dist(id.apply(x), x) < 1e-12);
  }
  // Poles.
  CHECK(dist(id.apply({1.0, 0.0, 0.0}), {1.0, 0.0, 0.0}) == 0.0);
  CHECK(dist(id.apply({0.0, 0.0, 1.0}), {0.0, 0.0, 1.0}) == 0.0);
  const auto flip = join_map(antipodal(0), identity_map(1));
  CHECK(dist(flip.apply({0.6, 0.8, 0.0}), {-0.6, 0.8, 0.0}) < 1e-12);
  // Continuity near the poles.
  const auto twist = join_map(identity_map(0), power_map(4));
  const Vec near{1.0, 1e-9, 1e-9};
  CHECK(dist(twist.apply(normalize(near)), {1.0, 0.0, 0.0}) < 1e-8);
}

TEST_CASE("all handles return unit vectors") {
  std::mt19937_64 rng(7);
  McDuffSpec spec;
  spec.sphere_dim = 2;
  spec.points = {UnitVector({1.0, 0.0, 0.0}), UnitVector({0.0, 1.0, 0.0})};
  spec.local_degrees = {2, -1};
  const std::vector<SphereMap> maps2 = {
      antipodal(2), reflection(UnitVector({0.0, 0.0, 1.0})), rho_slice(-3, UnitVector({0.0, 0.6, 0.8})),
      equivariant_join_family(2, -1), mcduff_map(spec), combine(2, identity_map(2), antipodal(2))};
  for (const auto& f : maps2) {
    for (int i = 0; i < 10000; ++i) {
      const Vec y = f.apply(random_unit(rng, 3));
      REQUIRE(std::abs(norm(y) - 1.0) < 1e-9);
    }
  }
  for (const auto& f : {power_map(5), combine(3, power_map(2), power_map(-1))}) {
    for (int i = 0; i < 10000; ++i)
      REQUIRE(std::abs(norm(f.apply(random_unit(rng, 2))) - 1.0) < 1e-9);
  }
}

TEST_CASE("mcduff maps") {
  std::mt19937_64 rng(8);
  McDuffSpec empty;
  empty.sphere_dim = 2;
  const auto id = mcduff_map(empty);
  for (int i = 0; i < 100; ++i) {
    const Vec x = random_unit(rng, 3);
    CHECK(dist(id.apply(x), x) == 0.0);
  }

  McDuffSpec spec;
  spec.sphere_dim = 2;
  spec.points = {UnitVector({1.0, 0.0, 0.0}), UnitVector({0.0, 1.0, 0.0}), UnitVector({0.0, 0.0, 1.0})};
  spec.epsilon = 0.2;
  const auto f = mcduff_map(spec);
  for (const auto& y : spec.points)
    CHECK(dist(f.apply(y.coords()), neg(y.coords())) < 1e-12);
  // Identity outside the balls.
  for (int i = 0; i < 2000; ++i) {
    const Vec x = random_unit(rng, 3);
    bool outside = true;
    for (const auto& y : spec.points)
      outside = outside && std::acos(std::clamp(dot(x, y.coords()), -1.0, 1.0)) >= 0.2 + 1e-12;
    if (outside)
      REQUIRE(dist(f.apply(x), x) == 0.0);
  }
}

TEST_CASE("mcduff seam") {
  // The fibre map v -> v / sqrt(1 - |v|^2) is only Hoelder-1/2 at the seam:
  // at radial parameter s the deviation from x is about 4 sqrt(2 (1 - s)).
  McDuffSpec spec;
  spec.sphere_dim = 2;
  spec.points = {UnitVector({0.0, 0.0, 1.0})};
  spec.epsilon = 0.3;
  const auto f = mcduff_map(spec);
  std::mt19937_64 rng(9);
  for (double gap : {1e-4, 1e-6, 1e-8, 1e-10, 1e-12, 1e-14}) {
    const double s = 1.0 - gap;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double phi = std::uniform_real_distribution<double>(0.0, 2 * kPi)(rng);
      const double angle = 0.3 * s;
      const Vec x{std::sin(angle) * std::cos(phi), std::sin(angle) * std::sin(phi), std::cos(angle)};
      worst = std::max(worst, dist(f.apply(x), x));
    }
    INFO("1 - s = " << gap << ", deviation " << worst);
    CHECK(worst <= 4.0 * std::sqrt(2.0 * gap) * 1.01 + 1e-12);
    if (gap <= 1e-14)
      CHECK(worst < 1e-6);
  }
}

TEST_CASE("mcduff spec validation") {
  McDuffSpec spec;
  spec.sphere_dim = 2;
  spec.points = {UnitVector({1.0, 0.0, 0.0}), UnitVector({0.0, 1.0, 0.0})};
  CHECK(spec.resolved_epsilon() == doctest::Approx(kPi / 8));
  spec.epsilon = 0.8;
  CHECK(code_of([&] { spec.validate(); }) == Errc::InvalidSpec);
  spec.epsilon = 0.1;
  spec.points.push_back(UnitVector::normalized({1.0, 0.1, 0.0}));
  CHECK(code_of([&] { spec.validate(); }) == Errc::InvalidSpec);
  spec.points.pop_back();
  spec.local_degrees = {1};
  CHECK(code_of([&] { spec.validate(); }) == Errc::InvalidSpec);
  spec.local_degrees = {1, 2};
  CHECK_NOTHROW(spec.validate());
  McDuffSpec circle;
  circle.sphere_dim = 1;
  circle.points = {UnitVector({1.0, 0.0})};
  circle.local_degrees = {2};
  CHECK(code_of([&] { circle.validate(); }) == Errc::InvalidSpec);
  // Default epsilon keeps balls strictly apart.
  McDuffSpec close;
  close.sphere_dim = 2;
  close.points = {UnitVector({1.0, 0.0, 0.0}), UnitVector::normalized({1.0, 0.2, 0.0})};
  CHECK_NOTHROW(close.validate());
}

TEST_CASE("equivariance") {
  for (long r = 0; r <= 3; ++r) {
    for (int sign : {1, -1})
      CHECK(check_equivariance(equivariant_join_family(r, sign), 500) < kEquivarianceThreshold);
  }
  const auto squared = join_map(identity_map(0), power_map(2)).with_action(c6_action());
  CHECK(check_equivariance(squared, 100) > 0.1);
  CHECK(check_equivariance(identity_map(1).with_action(rotation_action(5)), 100) == 0.0);
  CHECK(check_equivariance(power_map(4).with_action(rotation_action(3)), 100) < 1e-12);
  CHECK(code_of([] { check_equivariance(identity_map(2), 10); }) == Errc::NoAction);
  CHECK(code_of([] { identity_map(2).with_action(rotation_action(3)); }) == Errc::DimMismatch);
}

TEST_CASE("map spec grammar") {
  const auto p = parse_map_spec("power:r=5");
  CHECK(p.sphere_dim() == 1);
  CHECK(parse_map_spec("rho:r=2,u=1,0,0,0").sphere_dim() == 3);
  const auto j = parse_map_spec("join(antipodal:dim=0,power:r=3)");
  CHECK(j.sphere_dim() == 2);
  const auto c = parse_map_spec("combine:r=2(id:dim=1,power:r=3)");
  const Vec x{0.6, 0.8};
  CHECK(dist(c.apply(x), combine(2, identity_map(1), power_map(3)).apply(x)) < 1e-15);
  const auto nested = parse_map_spec("join(id:dim=0,combine:r=-1(power:r=2,power:r=1))");
  CHECK(nested.sphere_dim() == 2);
  CHECK(parse_map_spec("cjoin:r=1,sign=-1").action().has_value());

  const auto path = std::filesystem::temp_directory_path() / "sylow_points_test.txt";
  {
    std::ofstream out(path);
    out << "# two points\n1,0,0\n\n0,0.6,0.8\n";
  }
  const auto m = parse_map_spec("mcduff:points=" + path.string() + ",eps=0.2,degrees=1,-1");
  CHECK(m.sphere_dim() == 2);
  CHECK(read_points_file(path).size() == 2);

  for (const char* bad : {"power:r=x", "power", "rho:r=1", "join(power:r=1)", "nonsense:r=1",
                          "combine:r=1(power:r=1)", "power:r=1,q=2", "mcduff:points=/nonexistent/file",
                          "rho:r=1,u=0,0"}) {
    INFO(bad);
    CHECK(code_of([&] { parse_map_spec(bad); }) == Errc::ParseError);
  }
}
