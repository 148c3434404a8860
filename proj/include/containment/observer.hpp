#pragma once

#include <span>
#include <vector>

#include "containment/graph.hpp"
#include "containment/leaders.hpp"
#include "containment/types.hpp"

namespace containment {

struct Gains {
  double g1 = 1.0;
  double g2 = 1.0;
  double g3 = 1.0;
  double g4 = 1.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;

  bool operator==(const Gains&) const = default;
};

/// Observer state of one follower: reference pose, its rate and acceleration.
struct AgentState {
  Pose eta = Pose::Zero();
  Pose phi = Pose::Zero();
  Pose rho = Pose::Zero();
};

struct AgentDerivative {
  Pose eta = Pose::Zero();
  Pose phi = Pose::Zero();
  Pose rho = Pose::Zero();
};

struct FollowerNeighbor {
  int index;
  AgentState state;
};

struct LeaderNeighbor {
  int index;             // local leader index 0..m-1
  Pose scaled_pose;      // center + mu * offset
  Pose velocity;
  Pose acceleration;
};

/// Everything follower i may read at one instant.
struct NeighborView {
  std::vector<FollowerNeighbor> followers;
  std::vector<LeaderNeighbor> leaders;
};

/// Packs the neighbor data of follower i. Reads states[j] only for graph
/// neighbors j of i.
NeighborView gather_view(const InteractionGraph& graph, const LeaderModel& leaders, int i,
                         std::span<const AgentState> states, const TrajectoryDerivatives& center);

/// Local disagreement signal s_i. The leader position term uses the scaled
/// target, the rate and acceleration terms use the leader's own derivatives.
/// Throws InconsistentView if the view names a node that is not adjacent to i.
Pose coupling_signal(const InteractionGraph& graph, int i, const AgentState& self,
                     const NeighborView& view, const Gains& gains);

/// Right-hand side of the third-order reference generator for one agent.
AgentDerivative state_derivative(const AgentState& self, const Pose& s, const Gains& gains,
                                 double t);

struct GainReport {
  bool positive = false;
  bool bound_satisfied = false;
  double bound = 0.0;  // n * eta_bar
  double slack = 0.0;  // g4 - bound

  bool ok() const { return positive && bound_satisfied; }
};

GainReport validate_gains(const Gains& gains, int n, double eta_bar);

}  // namespace containment
