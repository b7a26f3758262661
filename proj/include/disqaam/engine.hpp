#pragma once

#include <disqaam/adversary.hpp>
#include <disqaam/box.hpp>
#include <disqaam/objective.hpp>
#include <disqaam/quantizer.hpp>
#include <disqaam/topology.hpp>
#include <disqaam/types.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace disqaam {

/// Static description of one agent for a whole run.
struct AgentSpec {
  Role role = Role::honest;
  /// Used by honest agents, and by adversaries when they quantize.
  UniformQuantizer<double> quantizer = UniformQuantizer<double>::exact(1);
  /// Ignored for honest agents.
  AttackPolicy attack = AttackPolicy::zero();
};

/// Everything fixed for the duration of a run. Validated on construction.
class Network {
 public:
  Network(NetworkTopology topology, ObjectiveSuite objectives, Box<double> box, std::vector<AgentSpec> agents,
          double alpha, bool adversary_quantizes = false);

  std::size_t size() const { return topology_.size(); }
  Eigen::Index dimension() const { return box_.dimension(); }
  const NetworkTopology& topology() const { return topology_; }
  const ObjectiveSuite& objectives() const { return objectives_; }
  const Box<double>& box() const { return box_; }
  const AgentSpec& agent(AgentId i) const { return agents_.at(i); }
  const std::vector<AgentSpec>& agents() const { return agents_; }
  double alpha() const { return alpha_; }
  bool adversary_quantizes() const { return adversary_quantizes_; }
  std::size_t honest_count() const;

 private:
  NetworkTopology topology_;
  ObjectiveSuite objectives_;
  Box<double> box_;
  std::vector<AgentSpec> agents_;
  double alpha_;
  bool adversary_quantizes_;
};

/// Iterates at iteration k; row i is x_i(k).
struct NetworkState {
  std::uint64_t k = 0;
  MatrixXd iterates;
};

/// Concatenation X(k) = [x_1; ...; x_n] in R^{np}.
VectorXd stacked(const NetworkState& state);

/// Values sent at iteration k; row j is q_j(k).
struct Broadcast {
  std::uint64_t k = 0;
  MatrixXd values;
  std::vector<bool> saturated;
};

/// Honest agents send Q(x_j(k)); adversaries send x_j(k) at full precision
/// unless the network is configured with adversary_quantizes.
Broadcast broadcast_phase(const Network& network, const NetworkState& state);

/// Everything the bounds consume from one iteration k -> k+1.
struct IterationTrace {
  std::uint64_t k = 0;
  VectorXd mean_all;        // x-bar(k)
  VectorXd mean_honest;     // mean over honest agents
  VectorXd next_mean_all;   // x-bar(k+1)
  std::vector<double> agent_errors;  // ||x_i(k) - x*||
  double err_mean_all = 0.0;
  double err_mean_honest = 0.0;
  VectorXd quant_error_mean;  // Delta(k) = (1/n) sum (x_i - q_i)
  double delta_bar = 0.0;     // (1/n) sum ||x_i - q_i||
  VectorXd xi_bar;            // (1/n) sum xi_i(h_i(k))
  double xi_bar_norm = 0.0;
  VectorXd grad_mean;         // (1/n) sum g_i(x_i(k))
  VectorXd attack_mean;       // (1/n) sum e_i(k), honest agents contribute 0
  std::vector<double> attack_norms;  // ||e_i(k)||, 0 for honest agents
  std::size_t saturation_count = 0;
  double lemma1_bound = 0.0;
  bool lemma1_holds = true;
  /// || x-bar(k+1) - (x-bar(k) - alpha grad_mean - xi_bar + attack_mean) ||_inf
  double bookkeeping_residual = 0.0;
};

struct StepResult {
  NetworkState next;
  IterationTrace trace;
};

/// h_i = x_i - q_i + sum_{j in N_i + i} w_ij q_j - alpha g_i(x_i) (+ e_i for
/// adversaries), then x_i(k+1) = [h_i]_X.
StepResult step(const Network& network, const NetworkState& state, const Broadcast& broadcast);

/// H = W X + (I - W)(X - Q) - alpha G, rows are agents.
MatrixXd matrix_form_update(const MatrixXd& weights, const MatrixXd& iterates, const MatrixXd& broadcast,
                            const MatrixXd& gradients, double alpha);

/// Tolerances of the per-iteration invariant checks.
inline constexpr double kBookkeepingTolerance = 1e-10;
inline constexpr double kLemmaSlack = 1e-12;

/// x_i(0) uniform in the box, a pure function of the seed.
NetworkState uniform_initial_state(const Network& network, std::uint64_t seed);
NetworkState explicit_initial_state(const Network& network, const MatrixXd& iterates);

struct RunDiagnostics {
  double max_bookkeeping_residual = 0.0;
  std::size_t lemma1_violations = 0;
  std::size_t saturated_steps = 0;
  bool feasible = true;

  bool clean() const { return max_bookkeeping_residual <= kBookkeepingTolerance && lemma1_violations == 0 && feasible; }
};

struct RunResult {
  std::vector<IterationTrace> traces;
  NetworkState final_state;
  VectorXd final_mean_all;
  VectorXd final_mean_honest;
  double final_err_all = 0.0;
  double final_err_honest = 0.0;
  std::vector<double> final_agent_errors;
  RunDiagnostics diagnostics;
};

struct RunOptions {
  std::uint64_t iterations = 1;
  /// Throw InvariantError on the first failed check instead of counting it.
  bool strict = false;
};

/// Synchronous rounds: broadcast, then every agent updates.
RunResult run(const Network& network, NetworkState initial, const RunOptions& options);

}  // namespace disqaam
