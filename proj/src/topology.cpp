#include <disqaam/topology.hpp>

#include <disqaam/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace disqaam {
namespace {

std::vector<Edge> normalize_edges(std::size_t n, const std::vector<Edge>& edges) {
  std::set<Edge> unique;
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) {
      throw IndexError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                       ") has an endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (a == b) {
      throw InvalidEdgeError("self-loop at agent " + std::to_string(a));
    }
    unique.emplace(std::min(a, b), std::max(a, b));
  }
  return {unique.begin(), unique.end()};
}

std::vector<std::vector<std::size_t>> adjacency(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

}  // namespace

NetworkTopology::NetworkTopology(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), neighbors_(adjacency(n, edges_)), weights_(metropolis_weights(n, edges_)) {}

NetworkTopology build_complete(std::size_t n) {
  if (n == 0) throw InvalidSizeError("network needs at least one agent");
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return NetworkTopology(n, std::move(edges));
}

NetworkTopology build_from_edge_list(std::size_t n, const std::vector<Edge>& edges) {
  if (n == 0) throw InvalidSizeError("network needs at least one agent");
  auto normalized = normalize_edges(n, edges);
  if (!is_connected(n, normalized)) throw ConnectivityError("communication graph is not connected");
  return NetworkTopology(n, std::move(normalized));
}

MatrixXd metropolis_weights(std::size_t n, const std::vector<Edge>& edges) {
  const auto adj = adjacency(n, edges);
  const auto size = static_cast<Eigen::Index>(n);
  MatrixXd w = MatrixXd::Zero(size, size);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : adj[i]) {
      w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          1.0 / (1.0 + static_cast<double>(std::max(adj[i].size(), adj[j].size())));
    }
  }
  for (Eigen::Index i = 0; i < size; ++i) {
    // Summed in index order so the result is a deterministic function of the edge set.
    double off = 0.0;
    for (Eigen::Index j = 0; j < size; ++j)
      if (j != i) off += w(i, j);
    w(i, i) = 1.0 - off;
  }
  return w;
}

bool is_connected(std::size_t n, const std::vector<Edge>& edges) {
  if (n == 0) return false;
  const auto adj = adjacency(n, edges);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n;
}

bool TopologyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const TopologyCheck& TopologyReport::check(const std::string& name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const auto& c) { return c.name == name; });
  if (it == checks.end()) throw std::out_of_range("no topology check named " + name);
  return *it;
}

TopologyReport validate(const NetworkTopology& topology) {
  return validate(topology.size(), topology.edges(), topology.weights());
}

TopologyReport validate(std::size_t n, const std::vector<Edge>& edges, const MatrixXd& weights) {
  TopologyReport report;
  const auto size = static_cast<Eigen::Index>(n);
  if (weights.rows() != size || weights.cols() != size) {
    report.checks.push_back({"shape", false, std::abs(static_cast<double>(weights.rows() - size))});
    return report;
  }

  const double row_dev = n == 0 ? 0.0 : (weights.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double col_dev = n == 0 ? 0.0 : (weights.colwise().sum().array() - 1.0).abs().maxCoeff();
  report.checks.push_back({"row_sums", row_dev <= kStochasticTolerance, row_dev});
  report.checks.push_back({"column_sums", col_dev <= kStochasticTolerance, col_dev});

  const double most_negative = n == 0 ? 0.0 : std::max(0.0, -weights.minCoeff());
  report.checks.push_back({"nonnegative", most_negative == 0.0, most_negative});

  std::vector<std::vector<bool>> is_edge(n, std::vector<bool>(n, false));
  for (auto [a, b] : edges) {
    if (a < n && b < n) {
      is_edge[a][b] = true;
      is_edge[b][a] = true;
    }
  }
  double off_pattern = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !is_edge[i][j])
        off_pattern = std::max(off_pattern, std::abs(weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
  report.checks.push_back({"sparsity", off_pattern == 0.0, off_pattern});

  const double asym = n == 0 ? 0.0 : (weights - weights.transpose()).cwiseAbs().maxCoeff();
  report.checks.push_back({"symmetric", asym <= kStochasticTolerance, asym});

  const bool connected = is_connected(n, edges);
  report.checks.push_back({"connected", connected, connected ? 0.0 : 1.0});
  return report;
}

}  // namespace disqaam
