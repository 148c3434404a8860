#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "containment/error.hpp"

namespace containment {

/// Follower/leader interaction graph with 0/1 weights.
///
/// Nodes 0..n-1 are followers, n..n+m-1 are leaders. Row i of the adjacency
/// lists whom node i listens to: a(i, j) = 1 means i has access to j.
/// Leaders listen to nobody, so their rows are zero.
class InteractionGraph {
 public:
  InteractionGraph(int followers, int leaders, Eigen::MatrixXd adjacency);

  int followers() const { return n_; }
  int leaders() const { return m_; }
  int size() const { return n_ + m_; }

  const Eigen::MatrixXd& adjacency() const { return adjacency_; }
  double weight(int receiver, int source) const { return adjacency_(receiver, source); }

  /// Followers adjacent to follower i (0-based follower indices).
  const std::vector<int>& follower_neighbors(int i) const { return follower_neighbors_.at(i); }
  /// Leaders heard by follower i, as local leader indices 0..m-1.
  const std::vector<int>& leader_neighbors(int i) const { return leader_neighbors_.at(i); }

 private:
  int n_;
  int m_;
  Eigen::MatrixXd adjacency_;
  std::vector<std::vector<int>> follower_neighbors_;
  std::vector<std::vector<int>> leader_neighbors_;
};

/// Builds a graph from 0-based node pairs. A pair of followers is stored
/// symmetrically; a pair (leader, follower) is a one-way link into the
/// follower's row. Any pair whose second entry is a leader is rejected.
InteractionGraph build_graph(int n, int m, std::span<const std::pair<int, int>> edges);

/// Full (n+m)x(n+m) Laplacian, diagonal = row sums of the adjacency.
Eigen::MatrixXd laplacian(const InteractionGraph& g);

struct LaplacianPartition {
  Eigen::MatrixXd l1;          // n x n follower block
  Eigen::MatrixXd l2;          // n x m follower-to-leader block
  double min_eig = 0.0;
  double max_eig = 0.0;
  Eigen::MatrixXd projection;  // -L1^{-1} L2, rows are convex weights
};

/// Splits the Laplacian and computes -L1^{-1} L2 with a Cholesky solve.
/// Throws SingularL1 when lambda_min(L1) <= 1e-10 * max(1, lambda_max(L1)).
LaplacianPartition partition(const InteractionGraph& g);

struct Assumption1Report {
  bool connected_followers = false;
  bool every_follower_reaches_leader = false;

  bool holds() const { return connected_followers && every_follower_reaches_leader; }
};

Assumption1Report check_assumption1(const InteractionGraph& g);

}  // namespace containment
