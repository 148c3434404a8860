#include "containment/sim.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "containment/scenario.hpp"
#include "test_support.hpp"

namespace containment {
namespace {

using Pairs = std::vector<std::pair<int, int>>;

ScenarioConfig reference(const char* file = "reference_stationary.json") {
  return load_scenario(std::string(SCENARIO_DIR) + "/" + file);
}

// Plain RK4 on the 9-dimensional single-agent system, written out longhand.
struct SingleAgent {
  Pose target;
  Gains g;
  using X = Eigen::Matrix<double, 9, 1>;

  X field(const X& x, double t) const {
    const Pose eta = x.segment<3>(0), phi = x.segment<3>(3), rho = x.segment<3>(6);
    const Pose s = rho + g.g1 * phi + g.g2 * (eta - target);
    const double eps = g.gamma1 * std::exp(-g.gamma2 * t);
    X d;
    d << phi, rho, -g.g1 * phi - g.g2 * rho - g.g3 * s - g.g4 * s / std::sqrt(s.squaredNorm() + eps * eps);
    return d;
  }
  X rk4(X x, double t, double dt) const {
    const X k1 = field(x, t);
    const X k2 = field(x + 0.5 * dt * k1, t + 0.5 * dt);
    const X k3 = field(x + 0.5 * dt * k2, t + 0.5 * dt);
    const X k4 = field(x + dt * k3, t + dt);
    return x + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
};

TEST(Step, ConsensusIsAFixedPoint) {
  auto cfg = reference();
  const auto part = partition(cfg.system.graph);
  const Eigen::VectorXd target = limit_target(part, cfg.system.leaders, 0.0);
  std::vector<AgentState> states(4);
  for (int i = 0; i < 4; ++i) states[i].eta = target.segment<3>(3 * i);
  double t = 0.0;
  for (int k = 0; k < 100; ++k, t += 1e-3) {
    const auto next = step(cfg.system, states, t, 1e-3);
    for (int i = 0; i < 4; ++i) {
      EXPECT_LE((next[i].eta - states[i].eta).norm(), 1e-12);
      EXPECT_LE(next[i].phi.norm() + next[i].rho.norm(), 1e-12);
    }
    states = next;
  }
}

TEST(Step, RejectsNonPositiveDt) {
  const auto cfg = reference();
  for (double dt : {0.0, -1e-3}) {
    try {
      step(cfg.system, cfg.initial, 0.0, dt);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    }
  }
}

TEST(Step, SingleAgentApproachesLeaderMonotonically) {
  const Gains gains{1, 1, 1, 0.1, 1, 1};
  const System sys{build_graph(1, 1, Pairs{{1, 0}}), LeaderModel(Stationary{Pose(1, 0, 0)}, {Pose(2, 0, 0)}, 0.5),
                   gains};
  const Pose target = eval_scaled_leader(sys.leaders, 0, 0.0);
  ASSERT_EQ(target, Pose(2, 0, 0));

  std::vector<AgentState> states(1);
  double last_gap = std::abs(states[0].eta[0] - target[0]);
  for (int k = 0; k < 100; ++k) {
    states = step(sys, states, k * 1e-3, 1e-3);
    const double gap = std::abs(states[0].eta[0] - target[0]);
    EXPECT_LT(gap, last_gap);
    last_gap = gap;
  }

  const SingleAgent oracle{target, gains};
  SingleAgent::X x = SingleAgent::X::Zero();
  for (int k = 0; k < 10000; ++k) x = oracle.rk4(x, k * 1e-5, 1e-5);
  EXPECT_LE((states[0].eta - x.segment<3>(0)).norm(), 1e-10);
  EXPECT_LE((states[0].phi - x.segment<3>(3)).norm(), 1e-10);
  EXPECT_LE((states[0].rho - x.segment<3>(6)).norm(), 1e-10);
}

TEST(Step, ParallelMatchesSerialBitwise) {
  std::mt19937_64 rng(2);
  const System sys{testing::random_connected_graph(rng, 40, 3),
                   LeaderModel(Circular{2.0, 0.5, 0.0, true},
                               {Pose(2, 0, 0.2), Pose(-1, 1.5, -0.1), Pose(-1, -1.5, 0.05)}, 0.5),
                   Gains{1, 1, 1, 4, 1, 1}};
  auto a = testing::random_states(rng, 40);
  auto b = a;
  for (int k = 0; k < 20; ++k) {
    a = step(sys, a, k * 0.01, 0.01, Execution::Serial);
    b = step(sys, b, k * 0.01, 0.01, Execution::Parallel);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].eta, b[i].eta);
    EXPECT_EQ(a[i].phi, b[i].phi);
    EXPECT_EQ(a[i].rho, b[i].rho);
  }
}

TEST(Run, ReferenceScenarioEndsInsideScaledHull) {
  const auto cfg = reference();
  const auto out = run(cfg);
  const double tf = out.times.back();
  EXPECT_DOUBLE_EQ(tf, 40.0);
  const auto poly = leader_polygon(cfg.system.leaders, tf, true);
  const auto theta = theta_interval(cfg.system.leaders, tf, true);
  const Eigen::VectorXd target = limit_target(out.partition, cfg.system.leaders, tf);
  for (int i = 0; i < 4; ++i) {
    const Pose& eta = out.states.back()[i].eta;
    EXPECT_LE((eta - target.segment<3>(3 * i)).norm(), 1e-3);
    EXPECT_TRUE(contains_point(poly, eta.head<2>(), 1e-6));
    EXPECT_TRUE(theta.contains(eta[2], 1e-6));
  }
}

TEST(Run, DisconnectedGraphFailsValidation) {
  auto cfg = reference();
  cfg.system.graph = build_graph(4, 3, Pairs{{0, 1}, {2, 3}, {4, 0}, {5, 1}, {6, 1}});
  try {
    run(cfg);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_FALSE(e.report().assumption1.connected_followers);
    EXPECT_EQ(e.code(), ErrorCode::ValidationFailed);
  }
}

TEST(Run, LogStrideDoesNotAffectDynamics) {
  auto cfg = reference();
  cfg.t_final = 2.0;
  cfg.log_every = 10;
  const auto fine = run(cfg);
  cfg.log_every = 250;
  const auto coarse = run(cfg);
  ASSERT_EQ(coarse.times.size(), 9u);
  for (std::size_t k = 0; k < coarse.times.size(); ++k) {
    const std::size_t j = k * 25;
    ASSERT_EQ(fine.times[j], coarse.times[k]);
    for (int i = 0; i < 4; ++i) {
      EXPECT_EQ(fine.states[j][i].eta, coarse.states[k][i].eta);
      EXPECT_EQ(fine.states[j][i].rho, coarse.states[k][i].rho);
    }
  }
}

TEST(Run, FinalStepIsAlwaysLogged) {
  auto cfg = reference();
  cfg.t_final = 0.105;
  cfg.log_every = 50;
  const auto out = run(cfg);
  ASSERT_EQ(out.times.size(), 4u);
  EXPECT_DOUBLE_EQ(out.times.back(), 0.105);
  for (std::size_t k = 1; k < out.times.size(); ++k) EXPECT_GT(out.times[k], out.times[k - 1]);
}

TEST(Run, Deterministic) {
  auto cfg = reference("reference_circle.json");
  cfg.t_final = 1.0;
  const auto a = run(cfg);
  const auto b = run(cfg, RunOptions{false, Execution::Parallel});
  ASSERT_EQ(a.times, b.times);
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    for (int i = 0; i < 4; ++i) EXPECT_EQ(a.states[k][i].eta, b.states[k][i].eta);
    EXPECT_EQ(a.diagnostics[k].v1, b.diagnostics[k].v1);
  }
}

TEST(Run, DivergenceCarriesPartialRun) {
  auto cfg = reference();
  cfg.system.gains.g2 = -40.0;
  cfg.log_every = 10;
  try {
    run(cfg, RunOptions{true});
    FAIL();
  } catch (const DivergenceError& e) {
    EXPECT_GT(e.time(), 0.0);
    EXPECT_LT(e.time(), cfg.t_final);
    EXPECT_FALSE(e.partial().times.empty());
    EXPECT_LE(e.partial().times.back(), e.time());
  }
}

TEST(Run, OverrideStillNeedsNonSingularPartition) {
  auto cfg = reference();
  cfg.system.graph = build_graph(4, 3, Pairs{{0, 1}, {1, 2}, {2, 3}});
  EXPECT_THROW(run(cfg, RunOptions{true}), ValidationError);
}

TEST(ConvergenceTime, StartAtLimit) {
  auto cfg = reference();
  cfg.t_final = 1.0;
  const auto part = partition(cfg.system.graph);
  const Eigen::VectorXd target = limit_target(part, cfg.system.leaders, 0.0);
  for (int i = 0; i < 4; ++i) cfg.initial[i] = AgentState{target.segment<3>(3 * i), Pose::Zero(), Pose::Zero()};
  const auto out = run(cfg);
  EXPECT_EQ(convergence_time(out, 1e-9), 0.0);
}

TEST(ConvergenceTime, ZeroToleranceNeverReached) {
  auto cfg = reference();
  cfg.t_final = 5.0;
  EXPECT_FALSE(convergence_time(run(cfg), 0.0).has_value());
}

TEST(ConvergenceTime, ReferenceScenarioRegression) {
  const auto out = run(reference());
  const auto tc = convergence_time(out, 1e-3);
  ASSERT_TRUE(tc.has_value());
  EXPECT_DOUBLE_EQ(*tc, 17.2);
}

TEST(ConvergenceTime, NoLateEscape) {
  for (const char* file : {"reference_stationary.json", "reference_circle.json"}) {
    const auto out = run(reference(file));
    for (double tol : {1e-2, 1e-3, 1e-4}) {
      const auto tc = convergence_time(out, tol);
      if (!tc) continue;
      for (const auto& f : out.diagnostics) {
        if (f.t >= *tc) EXPECT_LE(f.xi.norm(), 2 * tol) << file << " t=" << f.t;
      }
    }
  }
}

TEST(Run, RichardsonOrderNearFour) {
  auto cfg = reference("reference_circle.json");
  cfg.t_final = 2.0;
  auto final_eta = [&](double dt) {
    cfg.dt = dt;
    cfg.log_every = 1000000;
    const auto out = run(cfg);
    return stack_eta(out.states.back());
  };
  const Eigen::VectorXd a = final_eta(0.02), b = final_eta(0.01), c = final_eta(0.005);
  const double order = std::log2((a - b).norm() / (b - c).norm());
  EXPECT_GE(order, 3.5);
}

}  // namespace
}  // namespace containment
