#include "containment/sim.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace containment {

ValidationError::ValidationError(ValidationReport report)
    : Error(ErrorCode::ValidationFailed,
            [&] {
              std::string text;
              for (const auto& f : report.failures) text += (text.empty() ? "" : "; ") + f;
              return text;
            }()),
      report_(std::move(report)) {}

DivergenceError::DivergenceError(double time, SimulationRun partial)
    : Error(ErrorCode::NonFiniteState, "state diverged at t = " + std::to_string(time)),
      time_(time),
      partial_(std::move(partial)) {}

ValidationReport validate(const ScenarioConfig& config) {
  const System& sys = config.system;
  ValidationReport r;

  r.assumption1 = check_assumption1(sys.graph);
  if (!r.assumption1.connected_followers) r.failures.push_back("connectivity: follower graph is not connected");
  if (!r.assumption1.every_follower_reaches_leader) {
    r.failures.push_back("connectivity: some follower has no path to a leader");
  }
  try {
    (void)partition(sys.graph);
    r.partition_ok = true;
  } catch (const Error& e) {
    r.failures.push_back(std::string("Laplacian partition: ") + e.what());
  }

  if (sys.leaders.count() != sys.graph.leaders()) {
    r.failures.push_back("leader count in the formation does not match the graph");
  }
  try {
    r.assumption3 = check_assumption3(sys.leaders);
    if (!r.assumption3.origin_enclosed) r.failures.push_back("formation: offset polygon does not enclose the origin");
    if (!r.assumption3.convex) r.failures.push_back("formation: offsets are not in convex position");
    if (!r.assumption3.theta_straddles_zero) r.failures.push_back("formation: 0 is not within [min, max] of theta offsets");
  } catch (const Error& e) {
    r.formation_degenerate = true;
    r.failures.push_back(std::string("formation: ") + e.what());
  }

  const double horizon = config.eta_bar_horizon > 0.0 ? config.eta_bar_horizon
                                                      : default_eta_bar_horizon(sys.leaders.trajectory());
  if (sys.gains.g1 > 0.0 && sys.gains.g2 > 0.0) {
    r.eta_bar = eta_bar(sys.leaders, sys.gains.g1, sys.gains.g2, horizon, config.eta_bar_samples);
  }
  r.assumption2 = std::isfinite(r.eta_bar);
  if (!r.assumption2) r.failures.push_back("leader motion: center derivatives are not bounded");

  r.gains = validate_gains(sys.gains, sys.followers(), r.eta_bar);
  if (!r.gains.positive) r.failures.push_back("gains: g1..g4, gamma1, gamma2 must all be positive");
  if (!r.gains.bound_satisfied) {
    std::ostringstream os;
    os.precision(17);
    os << "gain condition g4 >= n*eta_bar violated: g4 = " << sys.gains.g4 << ", n*eta_bar = " << r.gains.bound
       << ", slack = " << r.gains.slack;
    r.failures.push_back(os.str());
  }
  return r;
}

SimulationRun run(const ScenarioConfig& config, const RunOptions& options) {
  const System& sys = config.system;
  const int n = sys.followers();
  if (!(config.dt > 0.0) || !(config.t_final >= config.dt) || config.log_every < 1) {
    throw Error(ErrorCode::InvalidArgument, "need dt > 0, tFinal >= dt and logEvery >= 1");
  }
  if (static_cast<int>(config.initial.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "initial state count does not match follower count");
  }

  SimulationRun out;
  out.validation = validate(config);
  if (!out.validation.ok() && (!options.override_validation || !out.validation.partition_ok)) {
    throw ValidationError(out.validation);
  }
  out.partition = partition(sys.graph);
  const double eta_bar = out.validation.eta_bar;

  const auto steps = static_cast<long long>(std::llround(config.t_final / config.dt));
  std::vector<AgentState> states = config.initial;
  double v1_0 = 0.0;

  auto log_frame = [&](long long k) {
    const double t = static_cast<double>(k) * config.dt;
    const auto s = coupling_signals(sys, states, t, options.exec);
    if (k == 0) v1_0 = v1(big_s(states, out.partition, sys.leaders, sys.gains, 0.0), out.partition);
    out.times.push_back(t);
    out.states.push_back(states);
    out.diagnostics.push_back(make_frame(states, s, out.partition, sys.leaders, sys.gains, t, v1_0, eta_bar));
  };

  log_frame(0);
  for (long long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    try {
      states = step(sys, states, t, config.dt, options.exec);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonFiniteState) throw;
      throw DivergenceError(t + config.dt, std::move(out));
    }
    if ((k + 1) % config.log_every == 0 || k + 1 == steps) log_frame(k + 1);
  }
  return out;
}

std::optional<double> convergence_time(const SimulationRun& run, double tol) {
  if (run.diagnostics.empty()) return std::nullopt;
  std::size_t first = run.diagnostics.size();
  while (first > 0 && run.diagnostics[first - 1].xi.norm() <= tol) --first;
  if (first == run.diagnostics.size()) return std::nullopt;
  return run.diagnostics[first].t;
}

std::vector<AgentState> default_initial_states(const System& system, std::uint64_t seed,
                                               double half_width) {
  const LeaderModel& model = system.leaders;
  Pose centroid = Pose::Zero();
  for (int j = 0; j < model.count(); ++j) centroid += eval_scaled_leader(model, j, 0.0);
  centroid /= static_cast<double>(model.count());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-half_width, half_width);
  std::vector<AgentState> states(static_cast<std::size_t>(system.followers()));
  for (auto& s : states) {
    for (int k = 0; k < 3; ++k) s.eta[k] = centroid[k] + box(rng);
  }
  return states;
}

}  // namespace containment
