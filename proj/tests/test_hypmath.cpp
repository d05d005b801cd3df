#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "hypergrid/hypmath.hpp"
#include "test_support.hpp"

using namespace hg;
using namespace hg::hyp;
using hg::testing::max_abs_diff;

namespace {

Vec<2> on_x(double t) { return {std::sinh(t), 0.0, std::cosh(t)}; }

}  // namespace

TEST_CASE("minkowski_inner evaluates the signature (+,+,-)") {
  CHECK(minkowski_inner<2>({0, 0, 1}, {0, 0, 1}) == doctest::Approx(-1.0));
  CHECK(minkowski_inner<2>({1, 0, 0}, {1, 0, 0}) == doctest::Approx(1.0));
  CHECK(minkowski_inner<2>({0, 0, 1}, on_x(1.0)) == doctest::Approx(-std::cosh(1.0)));
  CHECK(minkowski_inner<2>({0, 0, 1}, on_x(1.0)) == doctest::Approx(-1.5431).epsilon(1e-4));

  const std::vector<double> a{1, 2, 3}, b{1, 2, 3, 4};
  CHECK_THROWS_AS(minkowski_inner(a, b), std::invalid_argument);
  const std::vector<double> c{1, 2, 3, 4};
  CHECK(minkowski_inner(b, c) == doctest::Approx(1 + 4 + 9 - 16));
}

TEST_CASE("points and directions are validated on construction") {
  CHECK_NOTHROW(Point2(on_x(2.0)));
  CHECK_THROWS_AS(Point2(Vec<2>{1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Point2(Vec<2>{0, 0, -1}), std::invalid_argument);
  CHECK_THROWS_AS(Point2::normalized(Vec<2>{2, 0, 1}), std::domain_error);
  CHECK_THROWS_AS(Direction<2>(Point2(), Vec<2>{1, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Direction<2>(Point2(), Vec<2>{0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(PlaneNormal<2>(Vec<2>{2, 0, 0}), std::invalid_argument);
  Mat<2> bad = identity_mat<2>();
  bad[0][0] = 2.0;
  CHECK_THROWS_AS(Isometry2{bad}, std::invalid_argument);
  Mat<2> flip = identity_mat<2>();
  flip[2][2] = -1.0;
  CHECK_THROWS_AS(Isometry2{flip}, std::invalid_argument);
}

TEST_CASE("distance") {
  CHECK(distance(Point2(), Point2()) == 0.0);
  CHECK(distance(Point2(), Point2(on_x(1.0))) == doctest::Approx(1.0));

  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto a = testing::random_point<3>(rng, 4.0);
    const auto b = testing::random_point<3>(rng, 4.0);
    CHECK(distance(a, b) == doctest::Approx(distance(b, a)).epsilon(1e-12));
    const auto m = testing::random_isometry<3>(rng, 3.0);
    CHECK(std::abs(distance(m.apply(a), m.apply(b)) - distance(a, b)) < 1e-8);
  }
}

TEST_CASE("geodesic_at") {
  const Direction<2> ex(Point2(), {1, 0, 0});
  CHECK(max_abs_diff<2>(geodesic_at(Point2(), ex, 0.0).vec(), Point2().vec()) < 1e-15);
  CHECK(max_abs_diff<2>(geodesic_at(Point2(), ex, 1.0).vec(), on_x(1.0)) < 1e-12);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> t(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const auto p = testing::random_point<2>(rng, 3.0);
    const auto v = testing::random_direction<2>(rng, p);
    const auto g = geodesic_at(p, v, t(rng));
    CHECK(minkowski_inner<2>(g.vec(), g.vec()) == doctest::Approx(-1.0).epsilon(1e-9));
  }

  // a direction tangent at the origin is not tangent elsewhere
  CHECK_THROWS_AS(geodesic_at(Point2(on_x(1.0)), ex, 1.0), std::invalid_argument);
}

TEST_CASE("translation_to") {
  CHECK(max_abs_diff<2>(translation_to(Point2()).mat(), identity_mat<2>()) == 0.0);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto p = testing::random_point<3>(rng, 5.0);
    const auto m = translation_to(p);
    CHECK(form_defect<3>(m.mat()) < 1e-8 * std::max(1.0, p[3] * p[3]));
    CHECK(max_abs_diff<3>(m.apply(Point3()).vec(), p.vec()) < 1e-9 * p[3]);
    CHECK(max_abs_diff<3>(m.inverse().apply(p).vec(), Point3().vec()) < 1e-9 * p[3]);
  }
}

TEST_CASE("reflect_in_plane") {
  const PlaneNormal<2> nx(Vec<2>{1, 0, 0});
  const auto r = reflect_in_plane(nx);
  const Vec<2> img = r.apply(on_x(1.0));
  CHECK(max_abs_diff<2>(img, Vec<2>{-std::sinh(1.0), 0.0, std::cosh(1.0)}) < 1e-12);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto n = testing::random_plane<3>(rng, 2.0);
    const auto m = reflect_in_plane(n);
    CHECK(form_defect<3>(m.mat()) < 1e-8);
    CHECK(max_abs_diff<3>((m * m).mat(), identity_mat<3>()) < 1e-8);
    // a point of the plane is fixed: project a random point onto it
    const auto p = testing::random_point<3>(rng, 2.0);
    const Vec<3> q = axpy<3>(-minkowski_inner<3>(p.vec(), n.vec()), n.vec(), p.vec());
    const auto on_plane = Point3::normalized(q);
    CHECK(max_abs_diff<3>(m.apply(on_plane.vec()), on_plane.vec()) < 1e-9 * on_plane[3]);
  }
}

TEST_CASE("ray_plane_hit on the x axis") {
  const Direction<2> ex(Point2(), {1, 0, 0});
  // <g(t), n> = cosh(1) sinh(t) - sinh(1) cosh(t) = sinh(t - 1)
  const PlaneNormal<2> n(Vec<2>{std::cosh(1.0), 0.0, std::sinh(1.0)});
  const auto t = ray_plane_hit(Point2(), ex, n);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(1.0).epsilon(1e-12));

  // ray running inside the plane y = 0
  const PlaneNormal<2> ny(Vec<2>{0, 1, 0});
  const auto inside = ray_plane_hit(Point2(), ex, ny);
  REQUIRE(inside.has_value());
  CHECK(*inside == 0.0);

  // pointing away from the plane x = tanh-distance 1
  const Direction<2> back(Point2(), {-1, 0, 0});
  CHECK_FALSE(ray_plane_hit(Point2(), back, n).has_value());
}

TEST_CASE("ray_plane_hit agrees with the marching oracle") {
  std::mt19937_64 rng(5);
  const double t_max = 12.0;
  int hits = 0, misses = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = testing::random_point<2>(rng, 1.5);
    const auto v = testing::random_direction<2>(rng, p);
    const auto n = testing::random_plane<2>(rng, 1.5);
    const auto got = ray_plane_hit(p, v, n);
    const double oracle = testing::marching_hit<2>(p.vec(), v.vec(), n.vec(), t_max);
    if (got && *got < t_max - 1e-3) {
      ++hits;
      CHECK(std::abs(*got - oracle) < 1e-3);
    } else if (!got) {
      ++misses;
      CHECK(oracle < 0.0);
    }
  }
  CHECK(hits > 100);
  CHECK(misses > 100);
}

TEST_CASE("to_disk") {
  const auto o = to_disk(Point2());
  CHECK(o.x == 0.0);
  CHECK(o.y == 0.0);
  const auto q = to_disk(Point2(on_x(1.0)));
  CHECK(q.x == doctest::Approx(std::tanh(0.5)));
  CHECK(q.x == doctest::Approx(0.4621).epsilon(1e-4));
  CHECK(q.y == 0.0);

  std::mt19937_64 rng(6);
  for (int i = 0; i < 500; ++i) {
    const auto p = testing::random_point<2>(rng, 15.0);
    const auto d = to_disk(p);
    CHECK(d.x * d.x + d.y * d.y < 1.0);
    const auto d2 = to_disk(p, 2.0);
    CHECK(d2.x * d2.x + d2.y * d2.y < d.x * d.x + d.y * d.y + 1e-15);
  }
  CHECK_THROWS_AS(to_disk(Point2(), 0.5), std::invalid_argument);
}

TEST_CASE("reorthonormalize") {
  CHECK(max_abs_diff<2>(reorthonormalize(Isometry2()).mat(), identity_mat<2>()) == 0.0);

  std::mt19937_64 rng(7);
  Isometry3 acc;
  for (int i = 1; i <= 10000; ++i) {
    const auto step = testing::random_isometry<3>(rng, 0.05);
    acc = acc * step;
    if (i % kRenormalizeEvery == 0) acc = reorthonormalize(acc);
  }
  acc = reorthonormalize(acc);
  CHECK(form_defect<3>(acc.mat()) < 1e-8);

  for (int i = 0; i < 50; ++i) {
    const auto m = testing::random_isometry<3>(rng, 3.0);
    const auto once = reorthonormalize(m);
    const auto twice = reorthonormalize(once);
    CHECK(max_abs_diff<3>(once.mat(), twice.mat()) < 1e-12 * std::max(1.0, once.mat()[3][3]));
  }

  Mat<2> degenerate{};
  CHECK_THROWS_AS(reorthonormalize(Isometry2::unchecked(degenerate)), std::domain_error);
}

TEST_CASE("composition acts as successive application") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto a = testing::random_isometry<3>(rng, 2.0);
    const auto b = testing::random_isometry<3>(rng, 2.0);
    const auto p = testing::random_point<3>(rng, 2.0);
    const Vec<3> lhs = (a * b).apply(p.vec());
    const Vec<3> rhs = a.apply(b.apply(p.vec()));
    CHECK(max_abs_diff<3>(lhs, rhs) < 1e-8 * std::max(1.0, lhs[3]));
    CHECK(max_abs_diff<3>((a * a.inverse()).mat(), identity_mat<3>()) < 1e-8 * a.mat()[3][3] * a.mat()[3][3]);
  }
}

TEST_CASE("rotation and axis translation preserve the form") {
  CHECK(form_defect<3>(rotation<3>(0, 2, 0.7).mat()) < 1e-14);
  CHECK(form_defect<3>(axis_translation<3>(1, 2.5).mat()) < 1e-12);
  const auto t = axis_translation<2>(0, 1.0);
  CHECK(max_abs_diff<2>(t.apply(origin_vec<2>()), on_x(1.0)) < 1e-14);
}
