#include "escat/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace escat::geometry {

namespace {

Real polygon_area(const std::vector<Vec2>& v) {
  Real twice = 0.0;
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) twice += cross2(v[i], v[(i + 1) % n]);
  return 0.5 * twice;
}

Real point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const Real len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const Real t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  const int n = static_cast<int>(vertices_.size());
  require(n >= 3, ErrorKind::Geometry, "polygon: needs at least 3 vertices");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      require((vertices_[i] - vertices_[j]).norm() > 1e-12, ErrorKind::Geometry,
              "polygon: duplicate vertex");
  for (int i = 0; i < n; ++i) {
    const Vec2 e0 = vertices_[(i + 1) % n] - vertices_[i];
    const Vec2 e1 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
    require(cross2(e0, e1) > 0.0, ErrorKind::Geometry,
            "polygon: vertices must trace a strictly convex counter-clockwise loop");
  }
  area_ = polygon_area(vertices_);
  require(area_ >= 1e-12, ErrorKind::Geometry, "polygon: degenerate (area < 1e-12)");
}

Vec2 ConvexPolygon::centroid() const {
  Vec2 c = Vec2::Zero();
  Real twice = 0.0;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    const Real w = cross2(vertices_[i], vertices_[(i + 1) % n]);
    c += w * (vertices_[i] + vertices_[(i + 1) % n]);
    twice += w;
  }
  return c / (3.0 * twice);
}

std::pair<Vec2, Vec2> ConvexPolygon::bbox() const {
  Vec2 lo = vertices_[0], hi = vertices_[0];
  for (const auto& v : vertices_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return {lo, hi};
}

Real ConvexPolygon::shortest_edge_length() const {
  Real best = std::numeric_limits<Real>::infinity();
  for (int i = 0; i < size(); ++i) best = std::min(best, (vertex(i + 1) - vertex(i)).norm());
  return best;
}

bool ConvexPolygon::contains(const Vec2& p) const {
  for (int i = 0; i < size(); ++i) {
    if (cross2(vertex(i + 1) - vertex(i), p - vertex(i)) < -1e-14) return false;
  }
  return true;
}

Real ConvexPolygon::distance(const Vec2& p) const {
  if (contains(p)) return 0.0;
  Real best = std::numeric_limits<Real>::infinity();
  for (int i = 0; i < size(); ++i)
    best = std::min(best, point_segment_distance(p, vertex(i), vertex(i + 1)));
  return best;
}

Real ConvexPolygon::opening_angle(int i) const {
  const Vec2 a = (vertex(i - 1) - vertex(i)).normalized();
  const Vec2 b = (vertex(i + 1) - vertex(i)).normalized();
  return std::atan2(std::abs(cross2(b, a)), b.dot(a));
}

ConvexPolygon::ClipResult ConvexPolygon::clip_box(const Vec2& lo, const Vec2& hi) const {
  // Sutherland-Hodgman: clip the box against each polygon half-plane.
  std::vector<Vec2> poly = {lo, Vec2(hi.x(), lo.y()), hi, Vec2(lo.x(), hi.y())};
  std::vector<Vec2> next;
  for (int i = 0; i < size() && !poly.empty(); ++i) {
    const Vec2 a = vertex(i);
    const Vec2 d = vertex(i + 1) - a;
    next.clear();
    const int m = static_cast<int>(poly.size());
    for (int k = 0; k < m; ++k) {
      const Vec2& cur = poly[k];
      const Vec2& nxt = poly[(k + 1) % m];
      const Real sc = cross2(d, cur - a);
      const Real sn = cross2(d, nxt - a);
      if (sc >= 0.0) next.push_back(cur);
      if ((sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0)) {
        const Real t = sc / (sc - sn);
        next.push_back(cur + t * (nxt - cur));
      }
    }
    poly.swap(next);
  }
  ClipResult out;
  out.centroid = 0.5 * (lo + hi);
  if (poly.size() < 3) return out;
  Real twice = 0.0;
  Vec2 c = Vec2::Zero();
  const int m = static_cast<int>(poly.size());
  for (int k = 0; k < m; ++k) {
    const Real w = cross2(poly[k], poly[(k + 1) % m]);
    twice += w;
    c += w * (poly[k] + poly[(k + 1) % m]);
  }
  out.area = 0.5 * twice;
  if (out.area > 1e-300) out.centroid = c / (3.0 * twice);
  return out;
}

ConvexPolygon ConvexPolygon::translated(const Vec2& shift) const {
  std::vector<Vec2> v = vertices_;
  for (auto& x : v) x += shift;
  return ConvexPolygon(std::move(v));
}

ConvexPolygon ConvexPolygon::rotated(Real angle, const Vec2& pivot) const {
  const Real c = std::cos(angle), s = std::sin(angle);
  std::vector<Vec2> v = vertices_;
  for (auto& x : v) {
    const Vec2 d = x - pivot;
    x = pivot + Vec2(c * d.x() - s * d.y(), s * d.x() + c * d.y());
  }
  return ConvexPolygon(std::move(v));
}

Cone2D::Cone2D(const Vec2& apex_, const Vec2& bisector_, Real half_angle_)
    : apex(apex_), bisector(bisector_), half_angle(half_angle_) {
  require(std::abs(bisector.norm() - 1.0) < 1e-9, ErrorKind::Parameter,
          "cone: bisector must be a unit vector");
  require(half_angle > 0.0 && half_angle < M_PI, ErrorKind::Parameter,
          "cone: half angle must lie in (0, pi)");
}

bool Cone2D::contains(const Vec2& x) const {
  const Vec2 d = x - apex;
  const Real r = d.norm();
  if (r == 0.0) return true;
  return d.dot(bisector) >= r * std::cos(half_angle);
}

ConvexPolygon convex_hull(const std::vector<Vec2>& points) {
  require(points.size() >= 3, ErrorKind::Geometry, "convex_hull: needs at least 3 points");
  std::vector<Vec2> pts = points;
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return (a - b).norm() < 1e-13; }),
            pts.end());

  // Andrew monotone chain, dropping collinear points so the result is strict.
  auto build = [&pts](std::vector<Vec2>& chain, bool lower) {
    const int n = static_cast<int>(pts.size());
    for (int idx = 0; idx < n; ++idx) {
      const Vec2& p = pts[lower ? idx : n - 1 - idx];
      while (chain.size() >= 2 &&
             cross2(chain.back() - chain[chain.size() - 2], p - chain.back()) <= 1e-14)
        chain.pop_back();
      chain.push_back(p);
    }
  };
  std::vector<Vec2> lo, hi;
  build(lo, true);
  build(hi, false);
  lo.pop_back();
  hi.pop_back();
  lo.insert(lo.end(), hi.begin(), hi.end());
  require(lo.size() >= 3, ErrorKind::Geometry, "convex_hull: points are collinear");
  return ConvexPolygon(std::move(lo));
}

Real hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
  // For convex sets the directed sup-inf distance is attained at a vertex.
  auto directed = [](const ConvexPolygon& p, const ConvexPolygon& q) {
    Real best = 0.0;
    for (const auto& v : p.vertices()) best = std::max(best, q.distance(v));
    return best;
  };
  return std::max(directed(a, b), directed(b, a));
}

FarthestVertex farthest_vertex(const ConvexPolygon& p, const ConvexPolygon& other) {
  FarthestVertex out{p.vertex(0), 0, other.distance(p.vertex(0))};
  for (int i = 1; i < p.size(); ++i) {
    const Real d = other.distance(p.vertex(i));
    if (d > out.distance) out = {p.vertex(i), i, d};
  }
  return out;
}

Cone2D vertex_cone(const ConvexPolygon& p, int vertex_index) {
  require(vertex_index >= 0 && vertex_index < p.size(), ErrorKind::Parameter,
          "vertex_cone: vertex index out of range");
  const Vec2 apex = p.vertex(vertex_index);
  const Vec2 a = (p.vertex(vertex_index - 1) - apex).normalized();
  const Vec2 b = (p.vertex(vertex_index + 1) - apex).normalized();
  const Vec2 bis = (a + b).normalized();
  return Cone2D(apex, bis, 0.5 * p.opening_angle(vertex_index));
}

DirectionDelta direction_and_delta0(const Cone2D& cone) {
  require(cone.half_angle < M_PI / 2.0, ErrorKind::Parameter,
          "direction_and_delta0: unsupported cone, half angle must be < pi/2");
  return {-cone.bisector, std::cos(cone.half_angle)};
}

AdmissibilityReport check_admissible(const ConvexPolygon& p,
                                     const std::function<Real(const Vec2&)>& rho,
                                     const AdmissibilityBounds& bounds) {
  AdmissibilityReport report;
  const int n = p.size();
  if (!(bounds.alpha_M < M_PI / 2.0))
    report.violations.push_back("bounds: alpha_M must be < pi/2");

  for (int i = 0; i < n; ++i) {
    const Real angle = p.opening_angle(i);
    report.opening_angles.push_back(angle);
    if (!(angle > 2.0 * bounds.alpha_m && angle < 2.0 * bounds.alpha_M))
      report.violations.push_back("vertex " + std::to_string(i) +
                                  ": opening angle outside (2 alpha_m, 2 alpha_M)");
  }

  // Distance from each vertex to edges not incident to it.
  Real min_dist = std::numeric_limits<Real>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int e = 0; e < n; ++e) {
      if (e == i || (e + 1) % n == i) continue;  // incident edges
      min_dist = std::min(min_dist, point_segment_distance(p.vertex(i), p.vertex(e), p.vertex(e + 1)));
    }
  }
  report.min_vertex_edge_distance = min_dist;
  if (!(min_dist >= bounds.l0))
    report.violations.push_back("vertex-to-non-incident-edge distance below l0");

  for (int i = 0; i < n; ++i) {
    const Real contrast = std::abs(rho(p.vertex(i)) - 1.0);
    report.vertex_contrasts.push_back(contrast);
    if (!(contrast >= bounds.eps0))
      report.violations.push_back("vertex " + std::to_string(i) +
                                  ": density contrast below eps0");
  }

  report.is_admissible = report.violations.empty();
  return report;
}

std::string polygon_to_json(const ConvexPolygon& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : p.vertices()) arr.push_back({v.x(), v.y()});
  return arr.dump();
}

ConvexPolygon polygon_from_json(const std::string& text) {
  try {
    const nlohmann::json arr = nlohmann::json::parse(text);
    require(arr.is_array(), ErrorKind::Io, "polygon_from_json: expected a JSON array");
    std::vector<Vec2> vertices;
    for (const auto& item : arr) {
      require(item.is_array() && item.size() == 2, ErrorKind::Io,
              "polygon_from_json: each vertex must be [x, y]");
      vertices.emplace_back(item[0].get<Real>(), item[1].get<Real>());
    }
    return ConvexPolygon(std::move(vertices));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Io, std::string("polygon_from_json: ") + e.what());
  }
}

}  // namespace escat::geometry
