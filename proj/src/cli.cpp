#include "containment/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <omp.h>

#include "containment/scenario.hpp"

namespace containment::cli {

namespace {

using nlohmann::json;

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

void write_verdict_file(const std::filesystem::path& dir, const Verdict& v) {
  std::ofstream f(dir / "verdict.json");
  f << json(v).dump(2) << '\n';
}

int worst_exit(int a, int b) {
  auto rank = [](int c) { return c == kExitOk ? 0 : c == kExitValidation ? 1 : c == kExitDivergence ? 2 : 3; };
  return rank(a) >= rank(b) ? a : b;
}

void write_run_files(const std::filesystem::path& dir, const SimulationRun& run) {
  std::ofstream traj(dir / "trajectories.csv");
  write_trajectories_csv(traj, run);
  std::ofstream diag(dir / "diagnostics.csv");
  write_diagnostics_csv(diag, run);
}

json hull_json(const ConvexPolygon& poly) {
  json out = json::array();
  for (const auto& v : poly.vertices()) out.push_back({v.x(), v.y()});
  return out;
}

json margins_report(const LeaderModel& model) {
  const HullMargins m = margins(model);
  const auto original = theta_interval(model, 0.0, false);
  const auto scaled = theta_interval(model, 0.0, true);
  return {
      {"mu", model.mu()},
      {"alphaP", m.alpha_p},
      {"alphaTheta", m.alpha_theta},
      {"originalHull", hull_json(leader_polygon(model, 0.0, false))},
      {"scaledHull", hull_json(leader_polygon(model, 0.0, true))},
      {"thetaInterval", {{"original", {original.lo, original.hi}}, {"scaled", {scaled.lo, scaled.hi}}}},
  };
}

}  // namespace

bool Verdict::operator==(const Verdict& o) const {
  const bool margins_equal =
      margins.has_value() == o.margins.has_value() &&
      (!margins || (margins->alpha_p == o.margins->alpha_p && margins->alpha_theta == o.margins->alpha_theta));
  return connected_followers == o.connected_followers &&
         every_follower_reaches_leader == o.every_follower_reaches_leader && assumption2 == o.assumption2 &&
         origin_enclosed == o.origin_enclosed && convex == o.convex &&
         theta_straddles_zero == o.theta_straddles_zero && gain_ok == o.gain_ok && eta_bar == o.eta_bar &&
         gain_bound == o.gain_bound && gain_slack == o.gain_slack && simulated == o.simulated && tol == o.tol &&
         convergence_time == o.convergence_time && containment_final == o.containment_final &&
         envelope_violations == o.envelope_violations && margins_equal && divergence_time == o.divergence_time &&
         failures == o.failures && exit_code == o.exit_code;
}

void to_json(json& j, const Verdict& v) {
  j = json{
      {"assumption1", {{"connectedFollowers", v.connected_followers},
                       {"everyFollowerReachesLeader", v.every_follower_reaches_leader}}},
      {"assumption2", v.assumption2},
      {"assumption3",
       {{"originEnclosed", v.origin_enclosed}, {"convex", v.convex}, {"thetaStraddlesZero", v.theta_straddles_zero}}},
      {"gainCondition", {{"ok", v.gain_ok}, {"etaBar", v.eta_bar}, {"bound", v.gain_bound}, {"slack", v.gain_slack}}},
      {"simulated", v.simulated},
      {"tol", v.tol},
      {"convergenceTime", optional_json(v.convergence_time)},
      {"containmentFinal", optional_json(v.containment_final)},
      {"envelopeViolations", optional_json(v.envelope_violations)},
      {"margins", v.margins ? json{{"alphaP", v.margins->alpha_p}, {"alphaTheta", v.margins->alpha_theta}}
                            : json(nullptr)},
      {"divergenceTime", optional_json(v.divergence_time)},
      {"failures", v.failures},
      {"exitCode", v.exit_code},
  };
}

void from_json(const json& j, Verdict& v) {
  const auto& a1 = j.at("assumption1");
  v.connected_followers = a1.at("connectedFollowers").get<bool>();
  v.every_follower_reaches_leader = a1.at("everyFollowerReachesLeader").get<bool>();
  v.assumption2 = j.at("assumption2").get<bool>();
  const auto& a3 = j.at("assumption3");
  v.origin_enclosed = a3.at("originEnclosed").get<bool>();
  v.convex = a3.at("convex").get<bool>();
  v.theta_straddles_zero = a3.at("thetaStraddlesZero").get<bool>();
  const auto& gc = j.at("gainCondition");
  v.gain_ok = gc.at("ok").get<bool>();
  v.eta_bar = gc.at("etaBar").get<double>();
  v.gain_bound = gc.at("bound").get<double>();
  v.gain_slack = gc.at("slack").get<double>();
  v.simulated = j.at("simulated").get<bool>();
  v.tol = j.at("tol").get<double>();
  v.convergence_time = optional_from<double>(j.at("convergenceTime"));
  v.containment_final = optional_from<bool>(j.at("containmentFinal"));
  v.envelope_violations = optional_from<int>(j.at("envelopeViolations"));
  if (const auto& m = j.at("margins"); m.is_null()) {
    v.margins.reset();
  } else {
    v.margins = HullMargins{m.at("alphaP").get<double>(), m.at("alphaTheta").get<double>()};
  }
  v.divergence_time = optional_from<double>(j.at("divergenceTime"));
  v.failures = j.at("failures").get<std::vector<std::string>>();
  v.exit_code = j.at("exitCode").get<int>();
}

Verdict verdict_from_validation(const ScenarioConfig& config, const ValidationReport& report) {
  Verdict v;
  v.connected_followers = report.assumption1.connected_followers;
  v.every_follower_reaches_leader = report.assumption1.every_follower_reaches_leader;
  v.assumption2 = report.assumption2;
  v.origin_enclosed = report.assumption3.origin_enclosed;
  v.convex = report.assumption3.convex;
  v.theta_straddles_zero = report.assumption3.theta_straddles_zero;
  v.gain_ok = report.gains.ok();
  v.eta_bar = report.eta_bar;
  v.gain_bound = report.gains.bound;
  v.gain_slack = report.gains.slack;
  v.failures = report.failures;
  if (!report.formation_degenerate) {
    try {
      v.margins = margins(config.system.leaders);
    } catch (const Error& e) {
      v.failures.push_back(std::string("margins: ") + e.what());
    }
  }
  v.exit_code = v.failures.empty() ? kExitOk : kExitValidation;
  return v;
}

bool final_containment(const ScenarioConfig& config, const SimulationRun& run, double tol) {
  if (run.times.empty()) return false;
  const double t = run.times.back();
  const auto& model = config.system.leaders;
  const ConvexPolygon hull = leader_polygon(model, t, true);
  const ThetaInterval theta = theta_interval(model, t, true);
  for (const auto& s : run.states.back()) {
    if (!contains_point(hull, position(s.eta), tol) || !theta.contains(s.eta[2], tol)) return false;
  }
  return true;
}

void add_run_outcome(Verdict& v, const ScenarioConfig& config, const SimulationRun& run, double tol,
                     double containment_tol) {
  v.simulated = true;
  v.tol = tol;
  v.convergence_time = convergence_time(run, tol);
  if (!v.convergence_time) v.failures.push_back(fmt::format("|xi| did not settle below tol = {:.17g}", tol));

  v.containment_final = final_containment(config, run, containment_tol);
  if (!*v.containment_final) v.failures.push_back("final reference poses are outside the scaled hull");

  int violations = 0;
  for (const auto& f : run.diagnostics) {
    if (!envelope_holds(f)) ++violations;
  }
  v.envelope_violations = violations;
  if (violations > 0) v.failures.push_back(fmt::format("V1 exceeded the envelope at {} frames", violations));
  v.exit_code = v.failures.empty() ? kExitOk : kExitValidation;
}

void write_trajectories_csv(std::ostream& os, const SimulationRun& run) {
  os << "t,agent,x,y,theta,phi_x,phi_y,phi_theta,rho_x,rho_y,rho_theta\n";
  for (std::size_t k = 0; k < run.times.size(); ++k) {
    for (std::size_t i = 0; i < run.states[k].size(); ++i) {
      const auto& s = run.states[k][i];
      fmt::print(os, "{:.17g},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                 run.times[k], i + 1, s.eta[0], s.eta[1], s.eta[2], s.phi[0], s.phi[1], s.phi[2], s.rho[0],
                 s.rho[1], s.rho[2]);
    }
  }
}

void write_diagnostics_csv(std::ostream& os, const SimulationRun& run) {
  os << "t,xi_norm,bigS_norm,v1,envelope\n";
  for (const auto& f : run.diagnostics) {
    fmt::print(os, "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", f.t, f.xi.norm(), f.big_s.norm(), f.v1,
               f.envelope);
  }
}

int cmd_validate(const Options& opts, std::ostream& out, std::ostream& err) {
  std::optional<ScenarioConfig> cfg;
  try {
    cfg = load_scenario(opts.config, opts.seed);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  const Verdict v = verdict_from_validation(*cfg, validate(*cfg));
  out << json(v).dump(2) << '\n';
  for (const auto& f : v.failures) err << "FAIL " << f << '\n';
  return v.exit_code;
}

int cmd_run(const Options& opts, std::ostream& out, std::ostream& err) {
  std::optional<ScenarioConfig> cfg;
  try {
    cfg = load_scenario(opts.config, opts.seed);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  const std::filesystem::path dir = opts.out_dir.value_or(".");
  std::filesystem::create_directories(dir);

  const ValidationReport report = validate(*cfg);
  Verdict v = verdict_from_validation(*cfg, report);
  v.tol = opts.tol;
  if (!report.ok() && (!opts.override_validation || !report.partition_ok)) {
    write_verdict_file(dir, v);
    out << json(v).dump(2) << '\n';
    for (const auto& f : v.failures) err << "FAIL " << f << '\n';
    return kExitValidation;
  }

  try {
    const SimulationRun sim = run(*cfg, {opts.override_validation, opts.exec});
    write_run_files(dir, sim);
    add_run_outcome(v, *cfg, sim, opts.tol, opts.containment_tol);
  } catch (const DivergenceError& e) {
    write_run_files(dir, e.partial());
    v.simulated = true;
    v.divergence_time = e.time();
    v.failures.push_back(e.what());
    v.exit_code = kExitDivergence;
  }
  write_verdict_file(dir, v);
  out << json(v).dump(2) << '\n';
  for (const auto& f : v.failures) err << "FAIL " << f << '\n';
  return v.exit_code;
}

int cmd_margins(const Options& opts, const std::vector<double>& mu_sweep, std::ostream& out,
                std::ostream& err) {
  std::optional<LeaderModel> model;
  try {
    const json doc = read_json_file(opts.config);
    if (!doc.is_object() || !doc.contains("leaders")) {
      throw Error(ErrorCode::ParseError, "field 'leaders': missing");
    }
    model = parse_leader_block(doc["leaders"]);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  try {
    json report = margins_report(*model);
    if (!mu_sweep.empty()) {
      report["sweep"] = json::array();
      for (double mu : mu_sweep) {
        report["sweep"].push_back(margins_report(LeaderModel(model->trajectory(), model->offsets(), mu)));
      }
    }
    out << report.dump(2) << '\n';
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

int sweep_threads() {
  if (const char* env = std::getenv("CONTAINMENT_REF_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v);
  }
  return 0;
}

int cmd_sweep(const Options& opts, const std::string& parameter, const std::vector<double>& values,
              std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> known{"g3", "g4", "mu", "dt"};
  if (std::find(known.begin(), known.end(), parameter) == known.end()) {
    err << "unknown sweep parameter '" << parameter << "' (expected g3, g4, mu or dt)\n";
    return kExitUsage;
  }
  if (values.empty()) {
    err << "sweep needs at least one value\n";
    return kExitUsage;
  }
  std::optional<ScenarioConfig> base;
  try {
    base = load_scenario(opts.config, opts.seed);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  struct Row {
    std::string status = "ok";
    int exit_code = kExitOk;
    std::optional<double> convergence;
    double final_xi = std::numeric_limits<double>::quiet_NaN();
    std::optional<bool> contained;
    std::optional<int> violations;
    std::string message;
  };
  std::vector<Row> rows(values.size());

  const int threads = sweep_threads();
  const int count = static_cast<int>(values.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
  for (int k = 0; k < count; ++k) {
    Row& row = rows[static_cast<std::size_t>(k)];
    const double value = values[static_cast<std::size_t>(k)];
    try {
      ScenarioConfig cfg = *base;
      if (parameter == "g3") cfg.system.gains.g3 = value;
      if (parameter == "g4") cfg.system.gains.g4 = value;
      if (parameter == "dt") cfg.dt = value;
      if (parameter == "mu") {
        cfg.system.leaders = LeaderModel(cfg.system.leaders.trajectory(), cfg.system.leaders.offsets(), value);
      }
      const SimulationRun sim = run(cfg, {opts.override_validation, Execution::Serial});
      Verdict v = verdict_from_validation(cfg, sim.validation);
      add_run_outcome(v, cfg, sim, opts.tol, opts.containment_tol);
      row.exit_code = v.exit_code;
      row.status = v.exit_code == kExitOk ? "ok" : "checks_failed";
      row.convergence = v.convergence_time;
      row.final_xi = sim.diagnostics.back().xi.norm();
      row.contained = v.containment_final;
      row.violations = v.envelope_violations;
    } catch (const ValidationError& e) {
      row.status = "validation_failed";
      row.exit_code = kExitValidation;
      row.message = e.what();
    } catch (const DivergenceError& e) {
      row.status = "diverged";
      row.exit_code = kExitDivergence;
      row.message = e.what();
    } catch (const Error& e) {
      row.status = "invalid";
      row.exit_code = kExitValidation;
      row.message = e.what();
    }
  }

  std::ofstream file;
  if (opts.out_dir) {
    std::filesystem::create_directories(*opts.out_dir);
    file.open(*opts.out_dir / "sweep.csv");
  }
  auto emit = [&](const std::string& line) {
    out << line;
    if (file.is_open()) file << line;
  };
  emit("parameter,value,status,exit_code,convergence_time,final_xi_norm,containment_final,envelope_violations\n");
  int code = kExitOk;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Row& r = rows[k];
    emit(fmt::format("{},{:.17g},{},{},{},{:.17g},{},{}\n", parameter, values[k], r.status, r.exit_code,
                     r.convergence ? fmt::format("{:.17g}", *r.convergence) : std::string(), r.final_xi,
                     r.contained ? (*r.contained ? "true" : "false") : "",
                     r.violations ? std::to_string(*r.violations) : std::string()));
    if (!r.message.empty()) err << parameter << "=" << values[k] << ": " << r.message << '\n';
    code = worst_exit(code, r.exit_code);
  }
  return code;
}

}  // namespace containment::cli
