#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "containment/analysis.hpp"
#include "containment/field.hpp"
#include "containment/hull.hpp"

namespace containment {

struct ScenarioConfig {
  System system;
  std::vector<AgentState> initial;
  double dt = 1e-3;
  double t_final = 10.0;
  int log_every = 100;
  double eta_bar_horizon = 0.0;  // <= 0 selects the family default
  int eta_bar_samples = 2001;
};

struct ValidationReport {
  Assumption1Report assumption1;
  bool assumption2 = true;  // finite, bounded center derivatives
  Assumption3Report assumption3;
  bool formation_degenerate = false;
  bool partition_ok = false;
  double eta_bar = 0.0;
  GainReport gains;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Checks graph, leader formation and gain conditions. Never throws for
/// failed checks; they are listed in `failures`.
ValidationReport validate(const ScenarioConfig& config);

struct SimulationRun {
  std::vector<double> times;
  std::vector<std::vector<AgentState>> states;
  std::vector<DiagnosticsFrame> diagnostics;
  ValidationReport validation;
  LaplacianPartition partition;
};

struct RunOptions {
  bool override_validation = false;
  Execution exec = Execution::Serial;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Thrown when the state blows up; carries the frames logged so far.
class DivergenceError : public Error {
 public:
  DivergenceError(double time, SimulationRun partial);
  double time() const { return time_; }
  const SimulationRun& partial() const { return partial_; }

 private:
  double time_;
  SimulationRun partial_;
};

/// Integrates from 0 to t_final with fixed RK4 steps, logging every
/// log_every steps and always the final step.
SimulationRun run(const ScenarioConfig& config, const RunOptions& options = {});

/// Earliest logged time after which |xi| stays <= tol; nullopt if never.
std::optional<double> convergence_time(const SimulationRun& run, double tol);

/// eta uniform in a box of half-width `half_width` around the scaled leader
/// centroid at t = 0; phi = rho = 0.
std::vector<AgentState> default_initial_states(const System& system, std::uint64_t seed,
                                               double half_width);

}  // namespace containment
