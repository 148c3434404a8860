#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "containment/hull.hpp"
#include "containment/sim.hpp"

namespace containment::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitDivergence = 3;
inline constexpr int kExitUsage = 64;

struct Verdict {
  bool connected_followers = false;
  bool every_follower_reaches_leader = false;
  bool assumption2 = false;
  bool origin_enclosed = false;
  bool convex = false;
  bool theta_straddles_zero = false;
  bool gain_ok = false;
  double eta_bar = 0.0;
  double gain_bound = 0.0;
  double gain_slack = 0.0;
  bool simulated = false;
  double tol = 0.0;
  std::optional<double> convergence_time;
  std::optional<bool> containment_final;
  std::optional<int> envelope_violations;
  std::optional<HullMargins> margins;
  std::optional<double> divergence_time;
  std::vector<std::string> failures;
  int exit_code = kExitOk;

  bool operator==(const Verdict& other) const;
};

void to_json(nlohmann::json& j, const Verdict& v);
void from_json(const nlohmann::json& j, Verdict& v);

struct Options {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out_dir;
  double tol = 1e-3;
  double containment_tol = 1e-9;
  std::optional<std::uint64_t> seed;
  bool override_validation = false;
  Execution exec = Execution::Serial;
};

Verdict verdict_from_validation(const ScenarioConfig& config, const ValidationReport& report);

/// Adds the simulation outcome (convergence, containment, envelope) to a verdict.
void add_run_outcome(Verdict& verdict, const ScenarioConfig& config, const SimulationRun& run,
                     double tol, double containment_tol);

/// Final per-agent containment in the scaled position hull and theta interval.
bool final_containment(const ScenarioConfig& config, const SimulationRun& run, double tol);

void write_trajectories_csv(std::ostream& os, const SimulationRun& run);
void write_diagnostics_csv(std::ostream& os, const SimulationRun& run);

// Commands return the process exit code.
int cmd_validate(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_run(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_margins(const Options& opts, const std::vector<double>& mu_sweep, std::ostream& out,
                std::ostream& err);
int cmd_sweep(const Options& opts, const std::string& parameter, const std::vector<double>& values,
              std::ostream& out, std::ostream& err);

/// Thread cap for sweeps from CONTAINMENT_REF_THREADS (0 = OpenMP default).
int sweep_threads();

}  // namespace containment::cli
