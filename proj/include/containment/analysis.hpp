#pragma once

#include <span>

#include <Eigen/Dense>

#include "containment/graph.hpp"
#include "containment/leaders.hpp"
#include "containment/observer.hpp"

namespace containment {

// Centralized quantities used to certify convergence. Stacked vectors have
// length 3n, agent i occupying entries [3i, 3i+3). Kronecker products with
// I3 are applied blockwise, never formed.

struct DiagnosticsFrame {
  double t = 0.0;
  Eigen::VectorXd xi;
  Eigen::VectorXd xi_dot;
  Eigen::VectorXd big_s;
  Eigen::VectorXd s_stack;  // distributed coupling signals, stacked
  double v1 = 0.0;
  double envelope = 0.0;
};

Eigen::VectorXd stack_eta(std::span<const AgentState> states);
Eigen::VectorXd stack_phi(std::span<const AgentState> states);
Eigen::VectorXd stack_rho(std::span<const AgentState> states);

/// (M kron I3) x for an n x m matrix M and a stacked 3m vector x.
Eigen::VectorXd apply_blockwise(const Eigen::MatrixXd& m, const Eigen::VectorXd& x);

/// Stacked scaled leader targets at time t (length 3m).
Eigen::VectorXd stack_scaled_leaders(const LeaderModel& model, double t);

/// -(L1^{-1} L2 kron I3) times the stacked scaled leader poses.
Eigen::VectorXd limit_target(const LaplacianPartition& part, const LeaderModel& model, double t);

Eigen::VectorXd xi(std::span<const AgentState> states, const LaplacianPartition& part,
                   const LeaderModel& model, double t);

Eigen::VectorXd xi_dot(std::span<const AgentState> states, const LaplacianPartition& part,
                       const LeaderModel& model, double t);

Eigen::VectorXd big_s(std::span<const AgentState> states, const LaplacianPartition& part,
                      const LeaderModel& model, const Gains& gains, double t);

/// Centralized form of the stacked coupling signals:
/// (L1 kron I3)(rho + g1 phi + g2 eta) + (L2 kron I3)(accel + g1 vel + g2 scaled pose).
Eigen::VectorXd stacked_coupling(std::span<const AgentState> states, const LaplacianPartition& part,
                                 const LeaderModel& model, const Gains& gains, double t);

/// 0.5 S^T (L1 kron I3) S.
double v1(const Eigen::VectorXd& big_s, const LaplacianPartition& part);

/// Decay rate 2 g3 lambda_min(L1)^2 / lambda_max(L1).
double lambda1(const Gains& gains, const LaplacianPartition& part);

/// Comparison-lemma bound on V1(t).
double envelope(double v1_0, double t, const Gains& gains, const LaplacianPartition& part, int n,
                double eta_bar);

/// Least-squares slope of ln(value) against time. Needs >= 10 samples, all
/// values > 0 (NonPositiveValue otherwise).
double exp_rate(std::span<const double> times, std::span<const double> values);

/// Frame at (states, t). v1_0 is V1 at the start of the run.
DiagnosticsFrame make_frame(std::span<const AgentState> states, std::span<const Pose> coupling,
                            const LaplacianPartition& part, const LeaderModel& model,
                            const Gains& gains, double t, double v1_0, double eta_bar);

/// Envelope check with relative and absolute slack.
inline bool envelope_holds(const DiagnosticsFrame& f) {
  return f.v1 <= f.envelope * (1.0 + 1e-6) + 1e-12;
}

}  // namespace containment
