#include "containment/analysis.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "containment/field.hpp"
#include "containment/hull.hpp"
#include "containment/sim.hpp"
#include "test_support.hpp"

namespace containment {
namespace {

using Pairs = std::vector<std::pair<int, int>>;

const std::vector<Pose> kTriangle{Pose(2, 0, 0.2), Pose(-1, 1.5, -0.1), Pose(-1, -1.5, 0.05)};

LeaderModel triangle(Trajectory traj = Stationary{}, double mu = 0.5) {
  return LeaderModel(std::move(traj), kTriangle, mu);
}

std::vector<AgentState> at_limit(const LaplacianPartition& part, const LeaderModel& model, double t) {
  const auto c = eval_center(model, t);
  const Eigen::VectorXd target = limit_target(part, model, t);
  std::vector<AgentState> states(static_cast<std::size_t>(part.l1.rows()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    states[i].eta = target.segment<3>(3 * static_cast<Eigen::Index>(i));
    states[i].phi = c.d1;
    states[i].rho = c.d2;
  }
  return states;
}

TEST(LimitTarget, SingleFollowerSeesCentroid) {
  const auto g = build_graph(1, 3, Pairs{{1, 0}, {2, 0}, {3, 0}});
  const auto model = triangle();
  const Eigen::VectorXd target = limit_target(partition(g), model, 0.0);
  Pose centroid = Pose::Zero();
  for (int j = 0; j < 3; ++j) centroid += eval_scaled_leader(model, j, 0.0) / 3.0;
  EXPECT_LE((target - centroid).norm(), 1e-15);
}

TEST(LimitTarget, PathFollowsItsOnlyLeader) {
  const auto g = build_graph(2, 1, Pairs{{0, 1}, {2, 1}});
  const LeaderModel model(Circular{2.0, 0.5, 0.0, true}, {Pose(1, 0, 0.1)}, 0.5);
  const Eigen::VectorXd target = limit_target(partition(g), model, 1.7);
  const Pose leader = eval_scaled_leader(model, 0, 1.7);
  EXPECT_LE((target.segment<3>(0) - leader).norm(), 1e-14);
  EXPECT_LE((target.segment<3>(3) - leader).norm(), 1e-14);
}

TEST(LimitTarget, StationaryLeadersGiveConstantTarget) {
  std::mt19937_64 rng(4);
  const auto part = partition(testing::random_connected_graph(rng, 5, 3));
  const auto model = triangle();
  const Eigen::VectorXd a = limit_target(part, model, 0.0);
  for (double t : {0.5, 3.0, 100.0}) EXPECT_EQ(limit_target(part, model, t), a);
}

TEST(Xi, ZeroAtLimitAndUnitOffset) {
  const auto g = build_graph(1, 3, Pairs{{1, 0}, {2, 0}, {3, 0}});
  const auto part = partition(g);
  const auto model = triangle();
  auto states = at_limit(part, model, 0.0);
  EXPECT_TRUE(xi(states, part, model, 0.0).isZero(0.0));
  states[0].eta += Pose(1, 0, 0);
  EXPECT_LE((xi(states, part, model, 0.0) - Eigen::Vector3d(1, 0, 0)).norm(), 1e-15);
}

TEST(Xi, MatchesDenseKroneckerOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> nd(1, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = nd(rng);
    const auto g = testing::random_connected_graph(rng, n, 3);
    const auto part = partition(g);
    const auto model = triangle(Circular{1.5, 0.8, 0.3, true}, 0.7);
    const auto states = testing::random_states(rng, n);
    const double t = 2.3;
    const Eigen::MatrixXd l = laplacian(g);
    const Eigen::MatrixXd l1 = l.topLeftCorner(n, n);
    const Eigen::MatrixXd l2 = l.topRightCorner(n, 3);
    Eigen::VectorXd eta(3 * n), leaders(9);
    for (int i = 0; i < n; ++i) eta.segment<3>(3 * i) = states[i].eta;
    for (int j = 0; j < 3; ++j) leaders.segment<3>(3 * j) = eval_scaled_leader(model, j, t);
    const Eigen::VectorXd oracle = eta + testing::kron_i3(l1.inverse() * l2) * leaders;
    EXPECT_LE((xi(states, part, model, t) - oracle).norm(), 1e-10 * (1 + oracle.norm()));
  }
}

TEST(BigS, ZeroAtLimitWithMatchedDerivatives) {
  std::mt19937_64 rng(5);
  const auto part = partition(testing::random_connected_graph(rng, 4, 3));
  const auto model = triangle(Circular{2.0, 0.5, 0.0, false});
  const Gains g{1, 2, 1, 1, 1, 1};
  for (double t : {0.0, 1.1, 7.5}) {
    EXPECT_LE(big_s(at_limit(part, model, t), part, model, g, t).norm(), 1e-13);
  }
}

TEST(BigS, StationaryRestStateIsScaledXi) {
  std::mt19937_64 rng(6);
  const auto part = partition(testing::random_connected_graph(rng, 5, 3));
  const auto model = triangle();
  auto states = testing::random_states(rng, 5);
  for (auto& s : states) s.phi = s.rho = Pose::Zero();
  const Gains g{1, 2.5, 1, 1, 1, 1};
  const Eigen::VectorXd expected = 2.5 * xi(states, part, model, 0.4);
  EXPECT_LE((big_s(states, part, model, g, 0.4) - expected).norm(), 1e-13);
}

TEST(BigS, LaplacianTimesBigSEqualsCouplingSignals) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> nd(1, 10);
  std::uniform_real_distribution<double> tdist(0, 30);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = nd(rng);
    const System sys{testing::random_connected_graph(rng, n, 3), triangle(Circular{2.0, 0.5, 0.2, true}),
                     Gains{1.0, 1.4, 1, 1, 1, 1}};
    const auto part = partition(sys.graph);
    const auto states = testing::random_states(rng, n);
    const double t = tdist(rng);
    const auto local = coupling_signals(sys, states, t);
    const Eigen::VectorXd lhs = apply_blockwise(part.l1, big_s(states, part, sys.leaders, sys.gains, t));
    Eigen::VectorXd rhs(3 * n);
    for (int i = 0; i < n; ++i) rhs.segment<3>(3 * i) = local[static_cast<std::size_t>(i)];
    EXPECT_LE((lhs - rhs).norm(), 1e-10 * (1 + rhs.norm()));
  }
}

TEST(V1, Examples) {
  const auto g = build_graph(1, 3, Pairs{{1, 0}, {2, 0}, {3, 0}});
  const auto part = partition(g);
  EXPECT_EQ(v1(Eigen::VectorXd::Zero(3), part), 0.0);
  EXPECT_DOUBLE_EQ(v1(Eigen::Vector3d(1, 0, 0), part), 1.5);
}

TEST(V1, SandwichedByEigenvalues) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 10;
    const auto part = partition(testing::random_connected_graph(rng, n, 2));
    Eigen::VectorXd s(3 * n);
    for (auto& x : s) x = z(rng);
    const double v = v1(s, part);
    const double sq = s.squaredNorm();
    EXPECT_GE(v, 0.5 * part.min_eig * sq * (1 - 1e-12));
    EXPECT_LE(v, 0.5 * part.max_eig * sq * (1 + 1e-12));
  }
}

TEST(Envelope, Examples) {
  const auto g = build_graph(2, 1, Pairs{{0, 1}, {2, 1}});
  const auto part = partition(g);
  const Gains gains{1, 1, 1, 1, 1, 1};
  EXPECT_DOUBLE_EQ(envelope(2.5, 0.0, gains, part, 2, 0.7), 2.5);
  const double l1 = lambda1(gains, part);
  EXPECT_DOUBLE_EQ(envelope(2.5, 3.0, gains, part, 2, 0.0), std::exp(-l1 * 3.0) * 2.5);
}

TEST(Envelope, Lambda1FromEigenvalues) {
  const auto g = build_graph(2, 1, Pairs{{0, 1}, {2, 1}});
  const auto part = partition(g);
  // L1 = [[1,-1],[-1,2]]: eigenvalues (3 -+ sqrt 5) / 2.
  const double lo = (3 - std::sqrt(5.0)) / 2, hi = (3 + std::sqrt(5.0)) / 2;
  EXPECT_NEAR(lambda1(Gains{1, 1, 1.5, 1, 1, 1}, part), 2 * 1.5 * lo * lo / hi, 1e-14);
}

TEST(Envelope, BranchesAgreeNearResonance) {
  const auto g = build_graph(2, 1, Pairs{{0, 1}, {2, 1}});
  const auto part = partition(g);
  Gains gains{1, 1, 1, 1, 2.0, 1};
  const double l1 = lambda1(gains, part);
  for (double t : {0.5, 2.0, 10.0}) {
    gains.gamma2 = l1;
    const double resonant = envelope(1.0, t, gains, part, 2, 0.8);
    EXPECT_NEAR(resonant, std::exp(-l1 * t) + 4 * 2.0 * 0.8 * t * std::exp(-l1 * t), 1e-14);
    for (double f : {1 - 1e-6, 1 + 1e-6}) {
      gains.gamma2 = l1 * f;
      EXPECT_NEAR(envelope(1.0, t, gains, part, 2, 0.8), resonant, 1e-5 * resonant);
    }
  }
}

TEST(ExpRate, Examples) {
  std::vector<double> t, decay, flat;
  for (int k = 0; k < 50; ++k) {
    t.push_back(0.1 * k);
    decay.push_back(std::exp(-2.0 * t.back()));
    flat.push_back(3.0);
  }
  EXPECT_NEAR(exp_rate(t, decay), -2.0, 1e-9);
  EXPECT_NEAR(exp_rate(t, flat), 0.0, 1e-12);
}

TEST(ExpRate, Errors) {
  std::vector<double> t{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<double> v(10, 1.0);
  v[4] = 0.0;
  try {
    exp_rate(t, v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveValue);
  }
  std::vector<double> few_t(9, 1.0), few_v(9, 1.0);
  EXPECT_THROW(exp_rate(few_t, few_v), Error);
}

TEST(AnalysisProperties, LimitTargetInsideScaledHull) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> nd(1, 10);
  std::uniform_real_distribution<double> mu(0.1, 0.9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto offsets = testing::random_formation(rng);
    const int m = static_cast<int>(offsets.size());
    const int n = nd(rng);
    const LeaderModel model(Circular{1.0, 0.3, 0.0, true}, offsets, mu(rng));
    const auto part = partition(testing::random_connected_graph(rng, n, m));
    const double t = 0.37 * trial;
    const Eigen::VectorXd target = limit_target(part, model, t);
    const auto poly = leader_polygon(model, t, true);
    const auto theta = theta_interval(model, t, true);
    for (int i = 0; i < n; ++i) {
      EXPECT_TRUE(contains_point(poly, target.segment<2>(3 * i), 1e-10));
      EXPECT_TRUE(theta.contains(target[3 * i + 2], 1e-10));
    }
  }
}

TEST(AnalysisProperties, XiDotMatchesFiniteDifferences) {
  ScenarioConfig cfg{System{build_graph(3, 3, Pairs{{0, 1}, {1, 2}, {3, 0}, {4, 1}, {5, 2}}),
                            triangle(Circular{2.0, 0.5, 0.0, true}), Gains{1, 1, 1, 1, 1, 1}},
                     {}, 1e-3, 1.0, 1};
  cfg.initial = default_initial_states(cfg.system, 3, 2.0);
  const auto out = run(cfg, RunOptions{true});
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < out.diagnostics.size(); ++k) {
    const auto& prev = out.diagnostics[k - 1];
    const auto& next = out.diagnostics[k + 1];
    const Eigen::VectorXd fd = (next.xi - prev.xi) / (next.t - prev.t);
    worst = std::max(worst, (fd - out.diagnostics[k].xi_dot).norm());
  }
  EXPECT_LE(worst, 1e-4);
}

}  // namespace
}  // namespace containment
