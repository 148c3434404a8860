#pragma once

#include <variant>
#include <vector>

#include "containment/types.hpp"

namespace containment {

// Trajectory families for the formation center. All derivatives are closed form.

struct Stationary {
  Pose pose = Pose::Zero();
};

struct ConstantVelocity {
  Pose start = Pose::Zero();
  Pose velocity = Pose::Zero();
};

/// p_c = R (cos wt, sin wt); theta_c = theta0, or theta0 + wt when spinning.
struct Circular {
  double radius = 1.0;
  double omega = 1.0;
  double theta0 = 0.0;
  bool spin = false;
};

/// Componentwise offset + amplitude * sin(frequency * t + phase).
struct Lissajous {
  Pose offset = Pose::Zero();
  Pose amplitude = Pose::Zero();
  Pose frequency = Pose::Zero();
  Pose phase = Pose::Zero();
};

using Trajectory = std::variant<Stationary, ConstantVelocity, Circular, Lissajous>;

struct TrajectoryDerivatives {
  Pose eta;
  Pose d1;
  Pose d2;
  Pose d3;
};

TrajectoryDerivatives evaluate(const Trajectory& trajectory, double t);

/// Sampling horizon for the eta_bar supremum: one period for periodic
/// families, unit time otherwise (derivatives are constant there).
double default_eta_bar_horizon(const Trajectory& trajectory);

/// Leader formation: a common center trajectory, constant per-leader
/// offsets and the scale factor mu in (0, 1).
class LeaderModel {
 public:
  LeaderModel(Trajectory trajectory, std::vector<Pose> offsets, double mu);

  const Trajectory& trajectory() const { return trajectory_; }
  const std::vector<Pose>& offsets() const { return offsets_; }
  int count() const { return static_cast<int>(offsets_.size()); }
  double mu() const { return mu_; }

  const Pose& offset(int j) const;

 private:
  Trajectory trajectory_;
  std::vector<Pose> offsets_;
  double mu_;
};

TrajectoryDerivatives eval_center(const LeaderModel& model, double t);

/// Pose of leader j (local index 0..m-1): center + offset.
Pose eval_leader(const LeaderModel& model, int j, double t);

/// Scaled target of leader j: center + mu * offset.
Pose eval_scaled_leader(const LeaderModel& model, int j, double t);

/// 1.1 * max over an even grid on [0, horizon] of |d3 + g1 d2 + g2 d1|.
double eta_bar(const LeaderModel& model, double g1, double g2, double horizon, int samples);

struct Assumption3Report {
  bool origin_enclosed = false;
  bool convex = false;
  bool theta_straddles_zero = false;

  bool holds() const { return origin_enclosed && convex && theta_straddles_zero; }
};

/// Throws DegenerateFormation when m < 3 or the position offsets are collinear.
Assumption3Report check_assumption3(const LeaderModel& model);

}  // namespace containment
