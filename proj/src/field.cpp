#include "containment/field.hpp"

#include <cmath>
#include <string>

namespace containment {

namespace {

inline void evaluate_agent(const System& system, std::span<const AgentState> states, double t,
                           const TrajectoryDerivatives& center, int i, std::span<AgentDerivative> out,
                           std::span<Pose> coupling) {
  const auto idx = static_cast<std::size_t>(i);
  const NeighborView view = gather_view(system.graph, system.leaders, i, states, center);
  const Pose s = coupling_signal(system.graph, i, states[idx], view, system.gains);
  out[idx] = state_derivative(states[idx], s, system.gains, t);
  if (!coupling.empty()) coupling[idx] = s;
}

void check_sizes(const System& system, std::span<const AgentState> states,
                 std::span<AgentDerivative> out, std::span<Pose> coupling) {
  const auto n = static_cast<std::size_t>(system.followers());
  if (states.size() != n || out.size() != n || (!coupling.empty() && coupling.size() != n)) {
    throw Error(ErrorCode::InvalidArgument, "state/derivative spans must have one entry per follower");
  }
}

AgentState axpy(const AgentState& x, double h, const AgentDerivative& k) {
  return {x.eta + h * k.eta, x.phi + h * k.phi, x.rho + h * k.rho};
}

bool blown_up(const AgentState& s) {
  constexpr double limit = 1e9;
  auto bad = [](const Pose& p) { return !p.allFinite() || p.cwiseAbs().maxCoeff() > limit; };
  return bad(s.eta) || bad(s.phi) || bad(s.rho);
}

}  // namespace

void evaluate_field_serial(const System& system, std::span<const AgentState> states, double t,
                           std::span<AgentDerivative> out, std::span<Pose> coupling) {
  check_sizes(system, states, out, coupling);
  const auto center = eval_center(system.leaders, t);
  const int n = system.followers();
  for (int i = 0; i < n; ++i) evaluate_agent(system, states, t, center, i, out, coupling);
}

void evaluate_field_parallel(const System& system, std::span<const AgentState> states, double t,
                             std::span<AgentDerivative> out, std::span<Pose> coupling) {
  check_sizes(system, states, out, coupling);
  const auto center = eval_center(system.leaders, t);
  const int n = system.followers();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) evaluate_agent(system, states, t, center, i, out, coupling);
}

void evaluate_field(const System& system, std::span<const AgentState> states, double t,
                    std::span<AgentDerivative> out, Execution exec, std::span<Pose> coupling) {
  if (exec == Execution::Parallel) {
    evaluate_field_parallel(system, states, t, out, coupling);
  } else {
    evaluate_field_serial(system, states, t, out, coupling);
  }
}

std::vector<Pose> coupling_signals(const System& system, std::span<const AgentState> states,
                                   double t, Execution exec) {
  const auto n = static_cast<std::size_t>(system.followers());
  std::vector<AgentDerivative> scratch(n);
  std::vector<Pose> s(n);
  evaluate_field(system, states, t, scratch, exec, s);
  return s;
}

std::vector<AgentState> step(const System& system, std::span<const AgentState> states, double t,
                             double dt, Execution exec) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  const auto n = static_cast<std::size_t>(system.followers());
  std::vector<AgentDerivative> k1(n), k2(n), k3(n), k4(n);
  std::vector<AgentState> stage(n);
  const double half = 0.5 * dt;

  evaluate_field(system, states, t, k1, exec);
  for (std::size_t i = 0; i < n; ++i) stage[i] = axpy(states[i], half, k1[i]);
  evaluate_field(system, stage, t + half, k2, exec);
  for (std::size_t i = 0; i < n; ++i) stage[i] = axpy(states[i], half, k2[i]);
  evaluate_field(system, stage, t + half, k3, exec);
  for (std::size_t i = 0; i < n; ++i) stage[i] = axpy(states[i], dt, k3[i]);
  evaluate_field(system, stage, t + dt, k4, exec);

  std::vector<AgentState> next(n);
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    next[i].eta = states[i].eta + w * (k1[i].eta + 2.0 * k2[i].eta + 2.0 * k3[i].eta + k4[i].eta);
    next[i].phi = states[i].phi + w * (k1[i].phi + 2.0 * k2[i].phi + 2.0 * k3[i].phi + k4[i].phi);
    next[i].rho = states[i].rho + w * (k1[i].rho + 2.0 * k2[i].rho + 2.0 * k3[i].rho + k4[i].rho);
    if (blown_up(next[i])) {
      throw Error(ErrorCode::NonFiniteState,
                  "agent " + std::to_string(i) + " diverged at t = " + std::to_string(t + dt));
    }
  }
  return next;
}

}  // namespace containment
