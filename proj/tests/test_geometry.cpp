#include <doctest.h>

#include <cmath>

#include "escat/geometry.hpp"

using namespace escat;
using namespace escat::geometry;

namespace {

ConvexPolygon unit_square() { return ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

ConvexPolygon random_polygon(Rng& rng, const Vec2& center, Real radius = 0.8) {
  std::vector<Vec2> points;
  for (int k = 0; k < 12; ++k) points.push_back(rng.in_disk(center, radius));
  return convex_hull(points);
}

}  // namespace

TEST_CASE("polygon construction guards") {
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}}), Error);
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {1, 0 + 1e-13}}), Error);
  // clockwise square
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), Error);
  // reflex vertex
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {0.4, 0.4}, {0, 1}}), Error);
  // degenerate sliver
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {0.5, 1e-13}}), Error);
}

TEST_CASE("convex hull eliminates interior points and is idempotent") {
  const auto square =
      convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
  CHECK(square.size() == 4);
  CHECK(square.area() == doctest::Approx(1.0));

  const auto tri = convex_hull({{0, 0}, {2, 0}, {1, 1}});
  CHECK(tri.size() == 3);

  Rng rng(31);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<Vec2> points;
    for (int k = 0; k < 100; ++k) points.push_back(rng.in_disk(Vec2(0.2, -0.1), 1.0));
    const auto hull = convex_hull(points);
    for (const auto& p : points) CHECK(hull.contains(p));
    const auto again = convex_hull(hull.vertices());
    REQUIRE(again.size() == hull.size());
    for (int i = 0; i < hull.size(); ++i)
      CHECK(again.distance(hull.vertex(i)) == doctest::Approx(0.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}, {2, 2}, {3, 3}}), Error);
}

TEST_CASE("hausdorff distance") {
  const auto square = unit_square();
  CHECK(hausdorff_distance(square, square) == 0.0);
  CHECK(hausdorff_distance(square, square.translated({0.3, 0.0})) == doctest::Approx(0.3));

  const ConvexPolygon big({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  CHECK(hausdorff_distance(square, big) == doctest::Approx(std::sqrt(2.0)));

  Rng rng(7);
  for (int rep = 0; rep < 12; ++rep) {
    const auto a = random_polygon(rng,{0, 0});
    const auto b = random_polygon(rng, {1.4, 0.2});
    const auto c = random_polygon(rng, {-0.5, 1.1});
    CHECK(std::abs(hausdorff_distance(a, b) - hausdorff_distance(b, a)) < 1e-12);
    CHECK(hausdorff_distance(a, b) <=
          hausdorff_distance(a, c) + hausdorff_distance(c, b) + 1e-12);
  }
}

TEST_CASE("farthest vertex and the joint-hull vertex fact") {
  const auto square = unit_square();
  const auto shifted = square.translated({0.3, 0.0});
  const auto fv = farthest_vertex(square, shifted);
  CHECK(fv.distance == doctest::Approx(0.3));
  CHECK(fv.index == 0);  // lowest-index tie break between the two left vertices

  const ConvexPolygon big({{-1, -1}, {2, -1}, {2, 2}, {-1, 2}});
  CHECK(farthest_vertex(square, big).distance == 0.0);

  // where the farthest vertex realizes the Hausdorff distance it is a vertex
  // of the joint hull, and the hull angle sits in (sigma, (sigma + pi)/2]
  Rng rng(19);
  int realized = 0;
  for (int rep = 0; rep < 30; ++rep) {
    auto a = random_polygon(rng, {0, 0});
    auto b = random_polygon(rng, {2.2, 0.3});
    const Real d_ab = [&] {
      Real best = 0.0;
      for (const auto& v : a.vertices()) best = std::max(best, b.distance(v));
      return best;
    }();
    const Real d_ba = [&] {
      Real best = 0.0;
      for (const auto& v : b.vertices()) best = std::max(best, a.distance(v));
      return best;
    }();
    if (d_ab < d_ba) std::swap(a, b);  // make the a-side attain the max

    const auto fva = farthest_vertex(a, b);
    if (std::abs(fva.distance - hausdorff_distance(a, b)) > 1e-12) continue;
    ++realized;

    std::vector<Vec2> all = a.vertices();
    all.insert(all.end(), b.vertices().begin(), b.vertices().end());
    const auto joint = convex_hull(all);
    int joint_index = -1;
    for (int i = 0; i < joint.size(); ++i)
      if ((joint.vertex(i) - fva.vertex).norm() < 1e-12) joint_index = i;
    REQUIRE(joint_index >= 0);

    const Real sigma = a.opening_angle(fva.index);
    const Real sigma_joint = joint.opening_angle(joint_index);
    CHECK(sigma_joint > sigma - 1e-12);
    CHECK(sigma_joint <= 0.5 * (sigma + M_PI) + 1e-9);
  }
  CHECK(realized >= 20);
}

TEST_CASE("vertex cones") {
  const auto square = unit_square();
  const auto cone = vertex_cone(square, 0);
  CHECK(cone.apex == Vec2(0, 0));
  CHECK(cone.bisector.x() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(cone.bisector.y() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(cone.half_angle == doctest::Approx(M_PI / 4.0));

  const ConvexPolygon tri({{0, 0}, {1, 0}, {0.5, 0.5 * std::sqrt(3.0)}});
  CHECK(vertex_cone(tri, 0).half_angle == doctest::Approx(M_PI / 6.0));

  CHECK_THROWS_AS(vertex_cone(square, 4), Error);
  CHECK_THROWS_AS(vertex_cone(square, -1), Error);

  // sampled membership: polygon points near the vertex lie in the cone
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    const Vec2 x(rng.uniform(0.0, 0.4), rng.uniform(0.0, 0.4));
    if (!square.contains(x)) continue;
    CHECK(cone.contains(x));
  }
}

TEST_CASE("probe direction and decay constant") {
  const Cone2D cone45(Vec2(0, 0), Vec2(1, 0), M_PI / 4.0);
  const auto [p45, d45] = direction_and_delta0(cone45);
  CHECK(d45 == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(p45.x() == doctest::Approx(-1.0));

  const Cone2D cone30(Vec2(0, 0), Vec2(0, 1), M_PI / 6.0);
  CHECK(direction_and_delta0(cone30).delta0 == doctest::Approx(std::sqrt(3.0) / 2.0));

  CHECK_THROWS_AS(direction_and_delta0(Cone2D(Vec2(0, 0), Vec2(1, 0), M_PI / 2.0 + 0.01)), Error);

  // exhaustive sampling of the decay inequality
  Rng rng(11);
  const Cone2D cone(Vec2(0.2, -0.4), Vec2(0.6, 0.8).normalized(), 0.9);
  const auto [p, delta0] = direction_and_delta0(cone);
  Real worst = -1.0;
  const Real base = std::atan2(cone.bisector.y(), cone.bisector.x());
  for (int k = 0; k < 10000; ++k) {
    const Real spread = rng.uniform(-cone.half_angle, cone.half_angle);
    const Real radius = rng.uniform(1e-9, 3.0);
    const Vec2 x = cone.apex + radius * Vec2(std::cos(base + spread), std::sin(base + spread));
    worst = std::max(worst, p.dot(x - cone.apex) / (x - cone.apex).norm());
  }
  CHECK(worst <= -delta0 + 1e-12);
}

TEST_CASE("admissibility report") {
  const auto square = unit_square();
  const AdmissibilityBounds bounds{0.3, 1.0, 0.5, 0.1};
  auto rho_const = [](const Vec2&) { return 1.5; };

  const auto ok = check_admissible(square, rho_const, bounds);
  CHECK(ok.is_admissible);
  CHECK(ok.opening_angles.size() == 4);
  for (const Real angle : ok.opening_angles) CHECK(angle == doctest::Approx(M_PI / 2.0));
  CHECK(ok.min_vertex_edge_distance == doctest::Approx(1.0));

  // sliver triangle: opening angle below 2 alpha_m
  const ConvexPolygon thin({{0, 0}, {1, 0.0}, {0.0, 0.05}});
  const auto bad_angle = check_admissible(thin, rho_const, bounds);
  CHECK_FALSE(bad_angle.is_admissible);

  // vanishing vertex contrast
  auto rho_vanishing = [](const Vec2& x) { return 1.0 + 0.5 * (x - Vec2(0, 0)).norm(); };
  const auto bad_contrast = check_admissible(square, rho_vanishing, bounds);
  CHECK_FALSE(bad_contrast.is_admissible);
  bool found = false;
  for (const auto& v : bad_contrast.violations)
    if (v.find("contrast") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("polygon json round trip") {
  const auto square = unit_square();
  const auto text = polygon_to_json(square);
  const auto back = polygon_from_json(text);
  REQUIRE(back.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK((back.vertex(i) - square.vertex(i)).norm() == 0.0);
  CHECK_THROWS_AS(polygon_from_json("not json"), Error);
  CHECK_THROWS_AS(polygon_from_json("[[0,0],[1]]"), Error);
}

TEST_CASE("box clipping areas") {
  const auto square = unit_square();
  CHECK(square.clip_box({0.2, 0.2}, {0.4, 0.4}).area == doctest::Approx(0.04));
  CHECK(square.clip_box({-1.0, -1.0}, {-0.5, -0.5}).area == 0.0);
  // half-covered cell on the boundary
  CHECK(square.clip_box({-0.1, 0.4}, {0.1, 0.6}).area == doctest::Approx(0.02));
  // clip centroid stays inside the polygon
  const auto clip = square.clip_box({-0.1, -0.1}, {0.1, 0.1});
  CHECK(clip.area == doctest::Approx(0.01));
  CHECK(square.contains(clip.centroid));
}
