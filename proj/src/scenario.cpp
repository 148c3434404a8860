#include "containment/scenario.hpp"

#include <cmath>
#include <fstream>
#include <string>

namespace containment {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + why);
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "must be finite");
  return x;
}

double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, path + "." + key);
}

long long integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long long>();
}

Pose pose(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) fail(path, "expected [x, y, theta]");
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]"), number(v[2], path + "[2]")};
}

Pose pose_or(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  return it == obj.end() ? Pose::Zero() : pose(*it, path + "." + key);
}

InteractionGraph parse_graph(const json& g) {
  const int n = static_cast<int>(integer(member(g, "n", "graph"), "graph.n"));
  const int m = static_cast<int>(integer(member(g, "m", "graph"), "graph.m"));
  if (n < 1 || m < 1) fail("graph", "n and m must be at least 1");
  const json& edges = member(g, "edges", "graph");
  if (!edges.is_array()) fail("graph.edges", "expected an array of [i, j] pairs");
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string path = "graph.edges[" + std::to_string(k) + "]";
    const json& e = edges[k];
    if (!e.is_array() || e.size() != 2) fail(path, "expected [i, j]");
    pairs.emplace_back(static_cast<int>(integer(e[0], path)) - 1, static_cast<int>(integer(e[1], path)) - 1);
  }
  try {
    return build_graph(n, m, pairs);
  } catch (const Error& e) {
    fail("graph.edges", e.what());
  }
}

Trajectory parse_trajectory(const json& t) {
  const json& kind_node = member(t, "kind", "leaders.trajectory");
  if (!kind_node.is_string()) fail("leaders.trajectory.kind", "expected a string");
  const auto kind = kind_node.get<std::string>();
  const std::string path = "leaders.trajectory";
  if (kind == "stationary") return Stationary{pose_or(t, "eta", path)};
  if (kind == "line") return ConstantVelocity{pose_or(t, "eta", path), pose_or(t, "velocity", path)};
  if (kind == "circle") {
    Circular c;
    c.radius = number(member(t, "R", path), path + ".R");
    c.omega = number(member(t, "omega", path), path + ".omega");
    c.theta0 = number_or(t, "theta0", path, 0.0);
    if (const auto it = t.find("spin"); it != t.end()) {
      if (!it->is_boolean()) fail(path + ".spin", "expected true/false");
      c.spin = it->get<bool>();
    }
    return c;
  }
  if (kind == "lissajous") {
    return Lissajous{pose_or(t, "offset", path), pose_or(t, "amplitude", path), pose_or(t, "frequency", path),
                     pose_or(t, "phase", path)};
  }
  fail(path + ".kind", "unknown trajectory kind '" + kind + "'");
}

LeaderModel parse_leaders(const json& l) {
  const double mu = number(member(l, "mu", "leaders"), "leaders.mu");
  const json& offs = member(l, "offsets", "leaders");
  if (!offs.is_array()) fail("leaders.offsets", "expected an array of [x, y, theta]");
  std::vector<Pose> offsets;
  for (std::size_t k = 0; k < offs.size(); ++k) {
    offsets.push_back(pose(offs[k], "leaders.offsets[" + std::to_string(k) + "]"));
  }
  try {
    return LeaderModel(parse_trajectory(member(l, "trajectory", "leaders")), std::move(offsets), mu);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail("leaders", e.what());
  }
}

Gains parse_gains(const json& g) {
  Gains out;
  out.g1 = number(member(g, "g1", "gains"), "gains.g1");
  out.g2 = number(member(g, "g2", "gains"), "gains.g2");
  out.g3 = number(member(g, "g3", "gains"), "gains.g3");
  out.g4 = number(member(g, "g4", "gains"), "gains.g4");
  out.gamma1 = number(member(g, "gamma1", "gains"), "gains.gamma1");
  out.gamma2 = number(member(g, "gamma2", "gains"), "gains.gamma2");
  return out;
}

}  // namespace

LeaderModel parse_leader_block(const nlohmann::json& leaders) { return parse_leaders(leaders); }

ScenarioConfig parse_scenario(const nlohmann::json& doc, std::optional<std::uint64_t> seed) {
  if (!doc.is_object()) fail("", "scenario must be a JSON object");
  System system{parse_graph(member(doc, "graph", "")), parse_leaders(member(doc, "leaders", "")),
                parse_gains(member(doc, "gains", ""))};
  if (system.leaders.count() != system.graph.leaders()) {
    fail("leaders.offsets", "expected " + std::to_string(system.graph.leaders()) + " offsets (graph.m)");
  }

  ScenarioConfig cfg{std::move(system), {}};
  const json empty = json::object();
  const auto sim_it = doc.find("sim");
  const json& sim = sim_it == doc.end() ? empty : *sim_it;
  cfg.dt = number_or(sim, "dt", "sim", 1e-3);
  cfg.t_final = number_or(sim, "tFinal", "sim", 10.0);
  cfg.log_every = static_cast<int>(sim.contains("logEvery") ? integer(sim["logEvery"], "sim.logEvery") : 100);
  if (!(cfg.dt > 0.0)) fail("sim.dt", "must be positive");
  if (!(cfg.t_final >= cfg.dt)) fail("sim.tFinal", "must be at least dt");
  if (cfg.log_every < 1) fail("sim.logEvery", "must be at least 1");

  if (const auto it = doc.find("etaBar"); it != doc.end()) {
    cfg.eta_bar_horizon = number_or(*it, "horizon", "etaBar", 0.0);
    if (it->contains("samples")) cfg.eta_bar_samples = static_cast<int>(integer((*it)["samples"], "etaBar.samples"));
    if (cfg.eta_bar_samples < 2) fail("etaBar.samples", "must be at least 2");
  }

  const int n = cfg.system.followers();
  if (const auto it = doc.find("initial"); it != doc.end()) {
    if (!it->is_array() || static_cast<int>(it->size()) != n) {
      fail("initial", "expected one entry per follower (" + std::to_string(n) + ")");
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "initial[" + std::to_string(i) + "]";
      const json& s = (*it)[i];
      if (!s.is_object()) fail(path, "expected an object with eta/phi/rho");
      cfg.initial.push_back({pose(member(s, "eta", path), path + ".eta"), pose_or(s, "phi", path),
                             pose_or(s, "rho", path)});
    }
  } else {
    std::uint64_t chosen = 1;
    if (sim.contains("seed")) chosen = static_cast<std::uint64_t>(integer(sim["seed"], "sim.seed"));
    if (seed) chosen = *seed;
    const double box = number_or(sim, "initialBox", "sim", 3.0);
    if (!(box >= 0.0)) fail("sim.initialBox", "must be non-negative");
    cfg.initial = default_initial_states(cfg.system, chosen, box);
  }
  return cfg;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

ScenarioConfig load_scenario(const std::filesystem::path& path, std::optional<std::uint64_t> seed) {
  return parse_scenario(read_json_file(path), seed);
}

}  // namespace containment
