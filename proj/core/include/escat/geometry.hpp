#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "escat/types.hpp"

namespace escat::geometry {

/// Strictly convex polygon with counter-clockwise vertex order.
/// Construction rejects fewer than 3 vertices, duplicate vertices (within
/// 1e-12), non-strictly-convex traversal, and area below 1e-12.
class ConvexPolygon {
public:
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  const Vec2& vertex(int i) const { return vertices_[wrap(i)]; }

  Real area() const { return area_; }
  Vec2 centroid() const;
  /// Axis-aligned bounding box as (lower, upper).
  std::pair<Vec2, Vec2> bbox() const;
  Real shortest_edge_length() const;

  /// Boundary-inclusive membership.
  bool contains(const Vec2& p) const;
  /// Euclidean distance to the polygon as a closed set (0 inside).
  Real distance(const Vec2& p) const;
  /// Interior opening angle at vertex i, in (0, pi).
  Real opening_angle(int i) const;

  /// Area and centroid of the intersection with an axis-aligned box.
  /// Returns area 0 (and box center) for an empty intersection.
  struct ClipResult {
    Real area = 0.0;
    Vec2 centroid = Vec2::Zero();
  };
  ClipResult clip_box(const Vec2& lo, const Vec2& hi) const;

  ConvexPolygon translated(const Vec2& shift) const;
  ConvexPolygon rotated(Real angle, const Vec2& pivot = Vec2::Zero()) const;

private:
  int wrap(int i) const {
    const int n = size();
    return ((i % n) + n) % n;
  }
  std::vector<Vec2> vertices_;
  Real area_ = 0.0;
};

/// Open planar cone: apex + bisector direction + half opening angle.
/// Construction accepts half_angle in (0, pi); the CGO decay machinery
/// additionally requires half_angle < pi/2 (see direction_and_delta0).
struct Cone2D {
  Cone2D(const Vec2& apex_, const Vec2& bisector_, Real half_angle_);

  bool contains(const Vec2& x) const;

  Vec2 apex;
  Vec2 bisector;  // unit
  Real half_angle;
};

ConvexPolygon convex_hull(const std::vector<Vec2>& points);

Real hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b);

struct FarthestVertex {
  Vec2 vertex;
  int index = 0;
  Real distance = 0.0;
};

/// Vertex of `p` farthest from `other` (ties broken by lowest index).
FarthestVertex farthest_vertex(const ConvexPolygon& p, const ConvexPolygon& other);

/// Cone generated by the polygon at vertex i: apex at the vertex, bisector
/// along the interior angle bisector, half_angle = opening angle / 2.
Cone2D vertex_cone(const ConvexPolygon& p, int vertex_index);

struct DirectionDelta {
  Vec2 p;          // unit probe direction, -bisector
  Real delta0 = 0.0;  // cos(half_angle) > 0
};

/// Probe direction p = -bisector with its decay constant delta0 = cos(half),
/// so p.(x - apex) <= -delta0 |x - apex| for every x in the cone.
DirectionDelta direction_and_delta0(const Cone2D& cone);

struct AdmissibilityBounds {
  Real alpha_m = 0.0;
  Real alpha_M = 0.0;  // must satisfy alpha_M < pi/2
  Real l0 = 0.0;
  Real eps0 = 0.0;
};

struct AdmissibilityReport {
  bool is_admissible = false;
  std::vector<Real> opening_angles;
  Real min_vertex_edge_distance = 0.0;
  std::vector<Real> vertex_contrasts;
  std::vector<std::string> violations;
};

/// Checks Definition-style admissibility of a polygon with density evaluator
/// rho: opening angles in (2 alpha_m, 2 alpha_M), vertex-to-non-incident-edge
/// distances >= l0, and vertex contrast |rho(v) - 1| >= eps0.
AdmissibilityReport check_admissible(const ConvexPolygon& p,
                                     const std::function<Real(const Vec2&)>& rho,
                                     const AdmissibilityBounds& bounds);

/// JSON array-of-[x,y] serialization, e.g. [[0,0],[1,0],[1,1],[0,1]].
std::string polygon_to_json(const ConvexPolygon& p);
ConvexPolygon polygon_from_json(const std::string& text);

}  // namespace escat::geometry
