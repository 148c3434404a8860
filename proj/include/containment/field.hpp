#pragma once

#include <span>
#include <vector>

#include "containment/graph.hpp"
#include "containment/leaders.hpp"
#include "containment/observer.hpp"

namespace containment {

enum class Execution { Serial, Parallel };

/// The coupled multi-agent system: topology, leader formation and gains.
struct System {
  InteractionGraph graph;
  LeaderModel leaders;
  Gains gains;

  int followers() const { return graph.followers(); }
};

// Per-agent vector field of the whole fleet. The serial loop is the
// reference; the OpenMP version must agree with it bit for bit.

void evaluate_field_serial(const System& system, std::span<const AgentState> states, double t,
                           std::span<AgentDerivative> out, std::span<Pose> coupling = {});

void evaluate_field_parallel(const System& system, std::span<const AgentState> states, double t,
                             std::span<AgentDerivative> out, std::span<Pose> coupling = {});

void evaluate_field(const System& system, std::span<const AgentState> states, double t,
                    std::span<AgentDerivative> out, Execution exec, std::span<Pose> coupling = {});

/// Per-agent coupling signals at (states, t).
std::vector<Pose> coupling_signals(const System& system, std::span<const AgentState> states,
                                   double t, Execution exec = Execution::Serial);

/// One classical RK4 step. Substages use times t, t + dt/2 and t + dt.
/// Throws InvalidArgument for dt <= 0 and NonFiniteState when any component
/// of the result is NaN/Inf or exceeds 1e9 in magnitude.
std::vector<AgentState> step(const System& system, std::span<const AgentState> states, double t,
                             double dt, Execution exec = Execution::Serial);

}  // namespace containment
