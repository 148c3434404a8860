#include "containment/analysis.hpp"

#include <cmath>
#include <string>

namespace containment {

namespace {

template <class Member>
Eigen::VectorXd stack(std::span<const AgentState> states, Member member) {
  Eigen::VectorXd out(3 * static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    out.segment<3>(3 * static_cast<Eigen::Index>(i)) = states[i].*member;
  }
  return out;
}

Eigen::VectorXd repeat(const Pose& p, int count) {
  Eigen::VectorXd out(3 * count);
  for (int j = 0; j < count; ++j) out.segment<3>(3 * j) = p;
  return out;
}

}  // namespace

Eigen::VectorXd stack_eta(std::span<const AgentState> states) { return stack(states, &AgentState::eta); }
Eigen::VectorXd stack_phi(std::span<const AgentState> states) { return stack(states, &AgentState::phi); }
Eigen::VectorXd stack_rho(std::span<const AgentState> states) { return stack(states, &AgentState::rho); }

Eigen::VectorXd apply_blockwise(const Eigen::MatrixXd& m, const Eigen::VectorXd& x) {
  if (x.size() != 3 * m.cols()) {
    throw Error(ErrorCode::InvalidArgument, "stacked vector length " + std::to_string(x.size()) +
                                                " does not match " + std::to_string(m.cols()) + " blocks");
  }
  const Eigen::Map<const Eigen::MatrixXd> blocks(x.data(), 3, m.cols());
  Eigen::MatrixXd result = blocks * m.transpose();
  return Eigen::Map<const Eigen::VectorXd>(result.data(), result.size());
}

Eigen::VectorXd stack_scaled_leaders(const LeaderModel& model, double t) {
  const Pose center = eval_center(model, t).eta;
  Eigen::VectorXd out(3 * model.count());
  for (int j = 0; j < model.count(); ++j) out.segment<3>(3 * j) = center + model.mu() * model.offset(j);
  return out;
}

Eigen::VectorXd limit_target(const LaplacianPartition& part, const LeaderModel& model, double t) {
  return apply_blockwise(part.projection, stack_scaled_leaders(model, t));
}

Eigen::VectorXd xi(std::span<const AgentState> states, const LaplacianPartition& part,
                   const LeaderModel& model, double t) {
  return stack_eta(states) - limit_target(part, model, t);
}

Eigen::VectorXd xi_dot(std::span<const AgentState> states, const LaplacianPartition& part,
                       const LeaderModel& model, double t) {
  const auto c = eval_center(model, t);
  return stack_phi(states) - apply_blockwise(part.projection, repeat(c.d1, model.count()));
}

Eigen::VectorXd big_s(std::span<const AgentState> states, const LaplacianPartition& part,
                      const LeaderModel& model, const Gains& gains, double t) {
  const auto c = eval_center(model, t);
  const int m = model.count();
  const Eigen::VectorXd accel = apply_blockwise(part.projection, repeat(c.d2, m));
  const Eigen::VectorXd vel = apply_blockwise(part.projection, repeat(c.d1, m));
  const Eigen::VectorXd pose = apply_blockwise(part.projection, stack_scaled_leaders(model, t));
  return (stack_rho(states) - accel) + gains.g1 * (stack_phi(states) - vel) +
         gains.g2 * (stack_eta(states) - pose);
}

Eigen::VectorXd stacked_coupling(std::span<const AgentState> states, const LaplacianPartition& part,
                                 const LeaderModel& model, const Gains& gains, double t) {
  const auto c = eval_center(model, t);
  const int m = model.count();
  const Eigen::VectorXd own =
      stack_rho(states) + gains.g1 * stack_phi(states) + gains.g2 * stack_eta(states);
  const Eigen::VectorXd leader =
      repeat(c.d2, m) + gains.g1 * repeat(c.d1, m) + gains.g2 * stack_scaled_leaders(model, t);
  return apply_blockwise(part.l1, own) + apply_blockwise(part.l2, leader);
}

double v1(const Eigen::VectorXd& big_s, const LaplacianPartition& part) {
  return 0.5 * big_s.dot(apply_blockwise(part.l1, big_s));
}

double lambda1(const Gains& gains, const LaplacianPartition& part) {
  return 2.0 * gains.g3 * part.min_eig * part.min_eig / part.max_eig;
}

double envelope(double v1_0, double t, const Gains& gains, const LaplacianPartition& part, int n,
                double eta_bar) {
  const double l1 = lambda1(gains, part);
  const double g2 = gains.gamma2;
  const double decay = std::exp(-l1 * t);
  const double forcing = static_cast<double>(n) * static_cast<double>(n) * gains.gamma1 * eta_bar;
  if (std::abs(l1 - g2) <= 1e-9 * std::max(l1, g2)) return decay * v1_0 + forcing * t * decay;
  return decay * v1_0 + forcing * (decay - std::exp(-g2 * t)) / (g2 - l1);
}

double exp_rate(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size() || times.size() < 10) {
    throw Error(ErrorCode::InvalidArgument, "exp_rate needs at least 10 paired samples");
  }
  const auto count = static_cast<double>(times.size());
  double mean_t = 0.0;
  double mean_y = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(values[k] > 0.0)) {
      throw Error(ErrorCode::NonPositiveValue, "sample " + std::to_string(k) + " is not positive");
    }
    mean_t += times[k];
    mean_y += std::log(values[k]);
  }
  mean_t /= count;
  mean_y /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double dt = times[k] - mean_t;
    sxy += dt * (std::log(values[k]) - mean_y);
    sxx += dt * dt;
  }
  if (sxx == 0.0) throw Error(ErrorCode::InvalidArgument, "sample times are all equal");
  return sxy / sxx;
}

DiagnosticsFrame make_frame(std::span<const AgentState> states, std::span<const Pose> coupling,
                            const LaplacianPartition& part, const LeaderModel& model,
                            const Gains& gains, double t, double v1_0, double eta_bar) {
  DiagnosticsFrame f;
  f.t = t;
  f.xi = xi(states, part, model, t);
  f.xi_dot = xi_dot(states, part, model, t);
  f.big_s = big_s(states, part, model, gains, t);
  f.s_stack.resize(3 * static_cast<Eigen::Index>(coupling.size()));
  for (std::size_t i = 0; i < coupling.size(); ++i) {
    f.s_stack.segment<3>(3 * static_cast<Eigen::Index>(i)) = coupling[i];
  }
  f.v1 = v1(f.big_s, part);
  f.envelope = envelope(v1_0, t, gains, part, static_cast<int>(states.size()), eta_bar);
  return f;
}

}  // namespace containment
