#include "containment/leaders.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "containment/error.hpp"
#include "containment/hull.hpp"

namespace containment {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

TrajectoryDerivatives evaluate_family(const Stationary& s, double) {
  return {s.pose, Pose::Zero(), Pose::Zero(), Pose::Zero()};
}

TrajectoryDerivatives evaluate_family(const ConstantVelocity& c, double t) {
  return {c.start + t * c.velocity, c.velocity, Pose::Zero(), Pose::Zero()};
}

TrajectoryDerivatives evaluate_family(const Circular& c, double t) {
  const double w = c.omega;
  const double r = c.radius;
  const double cs = std::cos(w * t);
  const double sn = std::sin(w * t);
  TrajectoryDerivatives d;
  d.eta = {r * cs, r * sn, c.spin ? c.theta0 + w * t : c.theta0};
  d.d1 = {-r * w * sn, r * w * cs, c.spin ? w : 0.0};
  d.d2 = {-r * w * w * cs, -r * w * w * sn, 0.0};
  d.d3 = {r * w * w * w * sn, -r * w * w * w * cs, 0.0};
  return d;
}

TrajectoryDerivatives evaluate_family(const Lissajous& l, double t) {
  TrajectoryDerivatives d;
  for (int k = 0; k < 3; ++k) {
    const double a = l.amplitude[k];
    const double w = l.frequency[k];
    const double arg = w * t + l.phase[k];
    const double sn = std::sin(arg);
    const double cs = std::cos(arg);
    d.eta[k] = l.offset[k] + a * sn;
    d.d1[k] = a * w * cs;
    d.d2[k] = -a * w * w * sn;
    d.d3[k] = -a * w * w * w * cs;
  }
  return d;
}

bool all_finite(const Pose& p) { return p.allFinite(); }

}  // namespace

TrajectoryDerivatives evaluate(const Trajectory& trajectory, double t) {
  return std::visit([t](const auto& family) { return evaluate_family(family, t); }, trajectory);
}

double default_eta_bar_horizon(const Trajectory& trajectory) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return std::visit(
      Overloaded{
          [](const Stationary&) { return 1.0; },
          [](const ConstantVelocity&) { return 1.0; },
          [&](const Circular& c) { return c.omega != 0.0 ? two_pi / std::abs(c.omega) : 1.0; },
          [&](const Lissajous& l) {
            // Longest component period.
            double horizon = 1.0;
            for (int k = 0; k < 3; ++k) {
              if (l.frequency[k] != 0.0 && l.amplitude[k] != 0.0) {
                horizon = std::max(horizon, two_pi / std::abs(l.frequency[k]));
              }
            }
            return horizon;
          },
      },
      trajectory);
}

LeaderModel::LeaderModel(Trajectory trajectory, std::vector<Pose> offsets, double mu)
    : trajectory_(std::move(trajectory)), offsets_(std::move(offsets)), mu_(mu) {
  if (!(mu_ > 0.0 && mu_ < 1.0)) {
    throw Error(ErrorCode::InvalidModel, "mu must lie in (0, 1), got " + std::to_string(mu_));
  }
  if (offsets_.empty()) throw Error(ErrorCode::InvalidModel, "no leader offsets");
  for (const auto& d : offsets_) {
    if (!all_finite(d)) throw Error(ErrorCode::InvalidModel, "non-finite leader offset");
  }
  const auto at0 = evaluate(trajectory_, 0.0);
  if (!all_finite(at0.eta) || !all_finite(at0.d1) || !all_finite(at0.d2) || !all_finite(at0.d3)) {
    throw Error(ErrorCode::InvalidModel, "trajectory parameters produce non-finite values");
  }
}

const Pose& LeaderModel::offset(int j) const {
  if (j < 0 || j >= count()) {
    throw Error(ErrorCode::IndexOutOfRange, "leader " + std::to_string(j) + " of " +
                                                std::to_string(count()));
  }
  return offsets_[static_cast<std::size_t>(j)];
}

TrajectoryDerivatives eval_center(const LeaderModel& model, double t) {
  return evaluate(model.trajectory(), t);
}

Pose eval_leader(const LeaderModel& model, int j, double t) {
  const Pose& d = model.offset(j);
  return eval_center(model, t).eta + d;
}

Pose eval_scaled_leader(const LeaderModel& model, int j, double t) {
  const Pose& d = model.offset(j);
  return eval_center(model, t).eta + model.mu() * d;
}

double eta_bar(const LeaderModel& model, double g1, double g2, double horizon, int samples) {
  if (!(g1 > 0.0 && g2 > 0.0 && horizon > 0.0) || samples < 2) {
    throw Error(ErrorCode::InvalidArgument, "eta_bar needs g1, g2, horizon > 0 and samples >= 2");
  }
  double sup = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = horizon * static_cast<double>(k) / static_cast<double>(samples - 1);
    const auto d = eval_center(model, t);
    sup = std::max(sup, (d.d3 + g1 * d.d2 + g2 * d.d1).norm());
  }
  return 1.1 * sup;
}

Assumption3Report check_assumption3(const LeaderModel& model) {
  if (model.count() < 3) {
    throw Error(ErrorCode::DegenerateFormation, "need at least 3 leaders for a planar hull");
  }
  const auto points = position_offsets(model);
  const ConvexPolygon hull = hull_of_offsets(points);

  Assumption3Report report;
  report.convex = hull.size() == model.count();
  report.origin_enclosed = true;
  for (int i = 0; i < hull.size(); ++i) {
    if (!(hull.edge_clearance(i, Vec2::Zero()) > 0.0)) report.origin_enclosed = false;
  }
  double lo = model.offsets().front()[2];
  double hi = lo;
  for (const auto& d : model.offsets()) {
    lo = std::min(lo, d[2]);
    hi = std::max(hi, d[2]);
  }
  report.theta_straddles_zero = lo <= 0.0 && 0.0 <= hi;
  return report;
}

}  // namespace containment
