#include "containment/observer.hpp"

#include <cmath>
#include <string>

namespace containment {

NeighborView gather_view(const InteractionGraph& graph, const LeaderModel& leaders, int i,
                         std::span<const AgentState> states, const TrajectoryDerivatives& center) {
  NeighborView view;
  const auto& fn = graph.follower_neighbors(i);
  const auto& ln = graph.leader_neighbors(i);
  view.followers.reserve(fn.size());
  view.leaders.reserve(ln.size());
  for (int j : fn) view.followers.push_back({j, states[static_cast<std::size_t>(j)]});
  for (int k : ln) {
    view.leaders.push_back({k, center.eta + leaders.mu() * leaders.offset(k), center.d1, center.d2});
  }
  return view;
}

Pose coupling_signal(const InteractionGraph& graph, int i, const AgentState& self,
                     const NeighborView& view, const Gains& gains) {
  const int n = graph.followers();
  Pose rho_term = Pose::Zero();
  Pose phi_term = Pose::Zero();
  Pose eta_term = Pose::Zero();

  for (const auto& nb : view.followers) {
    if (nb.index < 0 || nb.index >= n || nb.index == i) {
      throw Error(ErrorCode::InconsistentView, "follower index " + std::to_string(nb.index));
    }
    const double a = graph.weight(i, nb.index);
    if (a == 0.0) {
      throw Error(ErrorCode::InconsistentView,
                  "follower " + std::to_string(nb.index) + " is not a neighbor of " + std::to_string(i));
    }
    rho_term += a * (self.rho - nb.state.rho);
    phi_term += a * (self.phi - nb.state.phi);
    eta_term += a * (self.eta - nb.state.eta);
  }
  for (const auto& nb : view.leaders) {
    if (nb.index < 0 || nb.index >= graph.leaders()) {
      throw Error(ErrorCode::InconsistentView, "leader index " + std::to_string(nb.index));
    }
    const double a = graph.weight(i, n + nb.index);
    if (a == 0.0) {
      throw Error(ErrorCode::InconsistentView,
                  "leader " + std::to_string(nb.index) + " is not heard by " + std::to_string(i));
    }
    rho_term += a * (self.rho - nb.acceleration);
    phi_term += a * (self.phi - nb.velocity);
    eta_term += a * (self.eta - nb.scaled_pose);
  }
  return rho_term + gains.g1 * phi_term + gains.g2 * eta_term;
}

AgentDerivative state_derivative(const AgentState& self, const Pose& s, const Gains& gains,
                                 double t) {
  const double fade = gains.gamma1 * std::exp(-gains.gamma2 * t);
  // s = 0 with a fully decayed fade contributes nothing.
  const double denom = std::hypot(s.norm(), fade);
  const double steer = denom > 0.0 ? gains.g4 / denom : 0.0;
  AgentDerivative d;
  d.eta = self.phi;
  d.phi = self.rho;
  d.rho = -gains.g1 * self.phi - gains.g2 * self.rho - gains.g3 * s - steer * s;
  return d;
}

GainReport validate_gains(const Gains& gains, int n, double eta_bar) {
  GainReport r;
  r.positive = gains.g1 > 0.0 && gains.g2 > 0.0 && gains.g3 > 0.0 && gains.g4 > 0.0 &&
               gains.gamma1 > 0.0 && gains.gamma2 > 0.0;
  r.bound = static_cast<double>(n) * eta_bar;
  r.slack = gains.g4 - r.bound;
  r.bound_satisfied = r.slack >= 0.0;
  return r;
}

}  // namespace containment
