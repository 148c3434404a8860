#include "containment/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "containment/error.hpp"

namespace containment {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Turn test for o -> a -> b with a tolerance relative to the segment lengths.
bool left_turn(const Vec2& o, const Vec2& a, const Vec2& b) {
  const Vec2 u = a - o;
  const Vec2 v = b - o;
  return cross(u, v) > 1e-12 * u.norm() * v.norm();
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw Error(ErrorCode::DegenerateFormation, "polygon needs at least 3 vertices");
  }
  const int n = size();
  for (int i = 0; i < n; ++i) {
    if (!left_turn(vertex(i), vertex(i + 1), vertex(i + 2))) {
      throw Error(ErrorCode::DegenerateFormation,
                  "vertices are not in strictly convex counterclockwise order");
    }
  }
}

double ConvexPolygon::edge_clearance(int i, const Vec2& p) const {
  const Vec2& a = vertex(i);
  const Vec2& b = vertex(i + 1);
  const Vec2 e = b - a;
  return cross(e, p - a) / e.norm();
}

ConvexPolygon hull_of_offsets(std::span<const Vec2> points) {
  if (points.size() < 3) {
    throw Error(ErrorCode::DegenerateFormation, "need at least 3 points, got " +
                                                    std::to_string(points.size()));
  }
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Andrew's monotone chain, lower then upper, collinear points dropped.
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && !left_turn(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && !left_turn(hull[k - 2], hull[k - 1], *it)) --k;
    hull[k++] = *it;
  }
  hull.resize(k > 0 ? k - 1 : 0);
  if (hull.size() < 3) throw Error(ErrorCode::DegenerateFormation, "points are collinear");
  return ConvexPolygon(std::move(hull));
}

ConvexPolygon scale_polygon(const ConvexPolygon& poly, const Vec2& center, double mu) {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "scale factor must lie in (0, 1)");
  }
  std::vector<Vec2> scaled;
  scaled.reserve(poly.vertices().size());
  for (const auto& v : poly.vertices()) scaled.push_back(center + mu * (v - center));
  return ConvexPolygon(std::move(scaled));
}

double edge_distance(const Vec2& d_i, const Vec2& d_j, double mu) {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "scale factor must lie in (0, 1)");
  }
  const double dx = d_i.x() - d_j.x();
  const double dy = d_j.y() - d_i.y();
  const double length = std::sqrt(dy * dy + dx * dx);
  if (length <= std::numeric_limits<double>::min() ||
      length <= 1e-14 * std::max(d_i.norm(), d_j.norm())) {
    throw Error(ErrorCode::DegenerateEdge, "edge endpoints coincide");
  }
  const double numerator = std::abs(d_j.x() * d_i.y() - d_i.x() * d_j.y());
  if (numerator <= 1e-12 * d_i.norm() * d_j.norm()) {
    throw Error(ErrorCode::ZeroDistance, "edge line passes through the formation center");
  }
  return (1.0 - mu) * numerator / length;
}

std::vector<Vec2> position_offsets(const LeaderModel& model) {
  std::vector<Vec2> points;
  points.reserve(model.offsets().size());
  for (const auto& d : model.offsets()) points.push_back(position(d));
  return points;
}

HullMargins margins(const LeaderModel& model) {
  const auto points = position_offsets(model);
  const ConvexPolygon hull = hull_of_offsets(points);
  HullMargins out;
  out.alpha_p = std::numeric_limits<double>::infinity();
  for (int i = 0; i < hull.size(); ++i) {
    out.alpha_p = std::min(out.alpha_p, edge_distance(hull.vertex(i), hull.vertex(i + 1), model.mu()));
  }
  double min_abs_theta = std::numeric_limits<double>::infinity();
  for (const auto& d : model.offsets()) min_abs_theta = std::min(min_abs_theta, std::abs(d[2]));
  out.alpha_theta = (1.0 - model.mu()) * min_abs_theta;
  return out;
}

bool contains_point(const ConvexPolygon& poly, const Vec2& p, double tol) {
  for (int i = 0; i < poly.size(); ++i) {
    if (poly.edge_clearance(i, p) < -tol) return false;
  }
  return true;
}

ThetaInterval theta_interval(const LeaderModel& model, double t, bool scaled) {
  const double s = scaled ? model.mu() : 1.0;
  const double center = eval_center(model, t).eta[2];
  double lo = model.offsets().front()[2];
  double hi = lo;
  for (const auto& d : model.offsets()) {
    lo = std::min(lo, d[2]);
    hi = std::max(hi, d[2]);
  }
  return {center + s * lo, center + s * hi};
}

ConvexPolygon leader_polygon(const LeaderModel& model, double t, bool scaled) {
  const double s = scaled ? model.mu() : 1.0;
  const Vec2 center = position(eval_center(model, t).eta);
  std::vector<Vec2> points;
  points.reserve(model.offsets().size());
  for (const auto& d : model.offsets()) points.push_back(center + s * position(d));
  return hull_of_offsets(points);
}

}  // namespace containment
