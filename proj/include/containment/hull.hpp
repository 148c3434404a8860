#pragma once

#include <span>
#include <vector>

#include "containment/leaders.hpp"
#include "containment/types.hpp"

namespace containment {

/// Strictly convex polygon, vertices in counterclockwise order.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  const Vec2& vertex(int i) const { return vertices_[static_cast<std::size_t>(i % size())]; }

  /// Signed distance from p to the line of edge i (positive inside).
  double edge_clearance(int i, const Vec2& p) const;

 private:
  std::vector<Vec2> vertices_;
};

struct ThetaInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double theta, double tol) const { return theta >= lo - tol && theta <= hi + tol; }
};

struct HullMargins {
  double alpha_p = 0.0;
  double alpha_theta = 0.0;
};

/// Convex hull in CCW order (monotone chain); collinear points are dropped.
ConvexPolygon hull_of_offsets(std::span<const Vec2> points);

/// Central dilation v -> center + mu (v - center), 0 < mu < 1.
ConvexPolygon scale_polygon(const ConvexPolygon& poly, const Vec2& center, double mu);

/// Gap between the line through (d_i, d_j) and the same line scaled by mu
/// about the origin.
double edge_distance(const Vec2& d_i, const Vec2& d_j, double mu);

HullMargins margins(const LeaderModel& model);

bool contains_point(const ConvexPolygon& poly, const Vec2& p, double tol);

ThetaInterval theta_interval(const LeaderModel& model, double t, bool scaled);

/// Hull of the leader positions at time t, optionally the mu-scaled one.
ConvexPolygon leader_polygon(const LeaderModel& model, double t, bool scaled);

std::vector<Vec2> position_offsets(const LeaderModel& model);

}  // namespace containment
