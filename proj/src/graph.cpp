#include "containment/graph.hpp"

#include <queue>
#include <string>

namespace containment {

namespace {

std::string pair_text(int a, int b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

InteractionGraph::InteractionGraph(int followers, int leaders, Eigen::MatrixXd adjacency)
    : n_(followers), m_(leaders), adjacency_(std::move(adjacency)) {
  if (n_ < 1 || m_ < 1) {
    throw Error(ErrorCode::InvalidArgument, "need at least one follower and one leader");
  }
  const int size = n_ + m_;
  if (adjacency_.rows() != size || adjacency_.cols() != size) {
    throw Error(ErrorCode::InvalidArgument, "adjacency must be (n+m)x(n+m)");
  }
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      const double a = adjacency_(i, j);
      if (a != 0.0 && a != 1.0) {
        throw Error(ErrorCode::InvalidArgument, "weights must be 0 or 1 at " + pair_text(i, j));
      }
    }
    if (adjacency_(i, i) != 0.0) throw Error(ErrorCode::SelfLoop, "node " + std::to_string(i));
  }
  for (int i = n_; i < size; ++i) {
    if (adjacency_.row(i).any()) {
      throw Error(ErrorCode::LeaderReceivesEdge, "leader row " + std::to_string(i) + " not zero");
    }
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < i; ++j) {
      if (adjacency_(i, j) != adjacency_(j, i)) {
        throw Error(ErrorCode::InvalidArgument, "follower block not symmetric at " + pair_text(i, j));
      }
    }
  }

  follower_neighbors_.resize(static_cast<std::size_t>(n_));
  leader_neighbors_.resize(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (adjacency_(i, j) != 0.0) follower_neighbors_[i].push_back(j);
    }
    for (int k = 0; k < m_; ++k) {
      if (adjacency_(i, n_ + k) != 0.0) leader_neighbors_[i].push_back(k);
    }
  }
}

InteractionGraph build_graph(int n, int m, std::span<const std::pair<int, int>> edges) {
  if (n < 1 || m < 1) {
    throw Error(ErrorCode::InvalidArgument, "need at least one follower and one leader");
  }
  const int size = n + m;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  for (const auto& [source, receiver] : edges) {
    if (source < 0 || source >= size || receiver < 0 || receiver >= size) {
      throw Error(ErrorCode::IndexOutOfRange, "edge " + pair_text(source, receiver));
    }
    if (source == receiver) throw Error(ErrorCode::SelfLoop, "edge " + pair_text(source, receiver));
    if (receiver >= n) {
      throw Error(ErrorCode::LeaderReceivesEdge, "edge " + pair_text(source, receiver));
    }
    a(receiver, source) = 1.0;
    if (source < n) a(source, receiver) = 1.0;
  }
  return InteractionGraph(n, m, std::move(a));
}

Eigen::MatrixXd laplacian(const InteractionGraph& g) {
  Eigen::MatrixXd l = -g.adjacency();
  l.diagonal() = g.adjacency().rowwise().sum();
  return l;
}

LaplacianPartition partition(const InteractionGraph& g) {
  const int n = g.followers();
  const int m = g.leaders();
  const Eigen::MatrixXd l = laplacian(g);

  LaplacianPartition p;
  p.l1 = l.topLeftCorner(n, n);
  p.l2 = l.topRightCorner(n, m);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p.l1, Eigen::EigenvaluesOnly);
  p.min_eig = eig.eigenvalues().minCoeff();
  p.max_eig = eig.eigenvalues().maxCoeff();
  if (p.min_eig <= 1e-10 * std::max(1.0, p.max_eig)) {
    throw Error(ErrorCode::SingularL1,
                "lambda_min(L1) = " + std::to_string(p.min_eig) + "; some follower has no leader path");
  }

  Eigen::LLT<Eigen::MatrixXd> chol(p.l1);
  if (chol.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularL1, "Cholesky factorization of L1 failed");
  }
  p.projection = -chol.solve(p.l2);
  return p;
}

Assumption1Report check_assumption1(const InteractionGraph& g) {
  const int n = g.followers();
  std::vector<int> component(static_cast<std::size_t>(n), -1);
  int components = 0;
  for (int start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    std::queue<int> frontier;
    frontier.push(start);
    component[start] = components;
    while (!frontier.empty()) {
      const int i = frontier.front();
      frontier.pop();
      for (int j : g.follower_neighbors(i)) {
        if (component[j] < 0) {
          component[j] = components;
          frontier.push(j);
        }
      }
    }
    ++components;
  }

  std::vector<bool> component_has_leader(static_cast<std::size_t>(components), false);
  for (int i = 0; i < n; ++i) {
    if (!g.leader_neighbors(i).empty()) component_has_leader[component[i]] = true;
  }

  Assumption1Report report;
  report.connected_followers = components == 1;
  report.every_follower_reaches_leader = true;
  for (int i = 0; i < n; ++i) {
    if (!component_has_leader[component[i]]) report.every_follower_reaches_leader = false;
  }
  return report;
}

}  // namespace containment
