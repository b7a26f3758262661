#pragma once

#include <disqaam/types.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace disqaam {

/// Unordered pair of agent indices, stored with first < second.
using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected connected communication graph together with its symmetric,
/// doubly stochastic Metropolis mixing matrix. Immutable once built.
class NetworkTopology {
 public:
  std::size_t size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// N_i, sorted, excluding i itself.
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return neighbors_.at(i); }
  std::size_t degree(std::size_t i) const { return neighbors_.at(i).size(); }
  const MatrixXd& weights() const { return weights_; }
  double weight(std::size_t i, std::size_t j) const { return weights_(i, j); }

  friend NetworkTopology build_complete(std::size_t n);
  friend NetworkTopology build_from_edge_list(std::size_t n, const std::vector<Edge>& edges);

 private:
  NetworkTopology(std::size_t n, std::vector<Edge> edges);

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> neighbors_;
  MatrixXd weights_;
};

/// K_n with Metropolis weights, i.e. W = (1/n) 1 1^T.
NetworkTopology build_complete(std::size_t n);

/// Rejects self-loops, out-of-range endpoints and disconnected graphs.
/// Duplicate edges (in either orientation) collapse to one.
NetworkTopology build_from_edge_list(std::size_t n, const std::vector<Edge>& edges);

/// Metropolis-Hastings weights: w_ij = 1 / (1 + max(d_i, d_j)) on edges,
/// w_ii = 1 - sum_{j != i} w_ij.
MatrixXd metropolis_weights(std::size_t n, const std::vector<Edge>& edges);

bool is_connected(std::size_t n, const std::vector<Edge>& edges);

struct TopologyCheck {
  std::string name;
  bool passed = false;
  double worst_deviation = 0.0;
};

struct TopologyReport {
  std::vector<TopologyCheck> checks;

  bool ok() const;
  const TopologyCheck& check(const std::string& name) const;
};

/// Tolerance used by the row/column-sum and symmetry checks.
inline constexpr double kStochasticTolerance = 1e-12;

/// Report-only validation of every NetworkTopology invariant: row_sums,
/// column_sums, nonnegative, sparsity, symmetric, connected.
TopologyReport validate(const NetworkTopology& topology);
TopologyReport validate(std::size_t n, const std::vector<Edge>& edges, const MatrixXd& weights);

}  // namespace disqaam
