#include <disqaam/engine.hpp>

#include <disqaam/bounds.hpp>
#include <disqaam/errors.hpp>

#include <algorithm>
#include <string>

namespace disqaam {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

bool uses_quantizer(const Network& network, AgentId i) {
  return network.agent(i).role == Role::honest || network.adversary_quantizes();
}

VectorXd error_vector(const VectorXd& x, const VectorXd& optimum) { return x - optimum; }

}  // namespace

Network::Network(NetworkTopology topology, ObjectiveSuite objectives, Box<double> box, std::vector<AgentSpec> agents,
                 double alpha, bool adversary_quantizes)
    : topology_(std::move(topology)),
      objectives_(std::move(objectives)),
      box_(std::move(box)),
      agents_(std::move(agents)),
      alpha_(alpha),
      adversary_quantizes_(adversary_quantizes) {
  const auto n = topology_.size();
  if (agents_.size() != n) throw ShapeError("agent list size does not match the topology");
  if (objectives_.size() != n) throw ShapeError("objective suite size does not match the topology");
  if (!(alpha_ >= 0.0)) throw AssumptionError("step size alpha must be nonnegative");
  if (honest_count() == 0) throw RoleError("at least one honest agent is required");
  if (objectives_.optimum.size() != box_.dimension()) throw ShapeError("optimum dimension does not match the box");
  for (std::size_t i = 0; i < n; ++i) {
    if (objectives_.locals[i].dimension != box_.dimension())
      throw ShapeError("objective " + std::to_string(i) + " dimension does not match the box");
    if (uses_quantizer(*this, i) && agents_[i].quantizer.dimension() != box_.dimension())
      throw ShapeError("quantizer " + std::to_string(i) + " dimension does not match the box");
    if (agents_[i].role == Role::adversarial && agents_[i].attack.kind() == AttackKind::constant &&
        agents_[i].attack.value().size() != box_.dimension())
      throw ShapeError("attack vector of agent " + std::to_string(i) + " does not match the box");
  }
}

std::size_t Network::honest_count() const {
  return static_cast<std::size_t>(
      std::count_if(agents_.begin(), agents_.end(), [](const AgentSpec& a) { return a.role == Role::honest; }));
}

VectorXd stacked(const NetworkState& state) {
  const MatrixXd rows = state.iterates.transpose();
  return Eigen::Map<const VectorXd>(rows.data(), rows.size());
}

Broadcast broadcast_phase(const Network& network, const NetworkState& state) {
  const auto n = network.size();
  Broadcast out;
  out.k = state.k;
  out.values.resize(idx(n), network.dimension());
  out.saturated.assign(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    const VectorXd x = state.iterates.row(idx(j)).transpose();
    if (uses_quantizer(network, j)) {
      const auto& q = network.agent(j).quantizer;
      out.saturated[j] = is_saturated(q, x);
      out.values.row(idx(j)) = quantize(q, x).transpose();
    } else {
      out.values.row(idx(j)) = x.transpose();
    }
  }
  return out;
}

MatrixXd matrix_form_update(const MatrixXd& weights, const MatrixXd& iterates, const MatrixXd& broadcast,
                            const MatrixXd& gradients, double alpha) {
  const MatrixXd identity = MatrixXd::Identity(weights.rows(), weights.cols());
  return weights * iterates + (identity - weights) * (iterates - broadcast) - alpha * gradients;
}

StepResult step(const Network& network, const NetworkState& state, const Broadcast& broadcast) {
  const auto n = network.size();
  const auto p = network.dimension();
  if (state.iterates.rows() != idx(n) || state.iterates.cols() != p)
    throw ShapeError("network state does not match the network size and dimension");
  if (broadcast.values.rows() != idx(n) || broadcast.values.cols() != p)
    throw ShapeError("broadcast buffer does not match the network size and dimension");
  if (broadcast.k != state.k) throw InvariantError("broadcast buffer belongs to a different iteration");

  const auto& topology = network.topology();
  const auto& optimum = network.objectives().optimum;
  const double alpha = network.alpha();
  const double inv_n = 1.0 / static_cast<double>(n);

  StepResult result;
  auto& trace = result.trace;
  trace.k = state.k;
  trace.mean_all = VectorXd::Zero(p);
  trace.mean_honest = VectorXd::Zero(p);
  trace.quant_error_mean = VectorXd::Zero(p);
  trace.xi_bar = VectorXd::Zero(p);
  trace.grad_mean = VectorXd::Zero(p);
  trace.attack_mean = VectorXd::Zero(p);
  trace.agent_errors.resize(n);
  trace.attack_norms.assign(n, 0.0);

  MatrixXd next(idx(n), p);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& spec = network.agent(i);
    const VectorXd x = state.iterates.row(idx(i)).transpose();
    const VectorXd own = broadcast.values.row(idx(i)).transpose();

    VectorXd mixed = topology.weight(i, i) * own;
    for (auto j : topology.neighbors(i)) mixed += topology.weight(i, j) * broadcast.values.row(idx(j)).transpose();

    const VectorXd g = network.objectives().locals[i].subgradient(x);
    VectorXd h = x - own + mixed - alpha * g;
    if (spec.role == Role::adversarial) {
      const VectorXd e = attack_vector(spec.attack, spec.role, i, state.k, p);
      h += e;
      trace.attack_mean += e;
      trace.attack_norms[i] = e.norm();
    }

    const VectorXd projected = project(network.box(), h);
    next.row(idx(i)) = projected.transpose();

    trace.mean_all += x;
    if (spec.role == Role::honest) trace.mean_honest += x;
    trace.agent_errors[i] = error_vector(x, optimum).norm();
    trace.quant_error_mean += x - own;
    trace.delta_bar += (x - own).norm();
    trace.xi_bar += h - projected;
    trace.grad_mean += g;
    if (broadcast.saturated[i]) ++trace.saturation_count;
  }

  trace.mean_all *= inv_n;
  trace.mean_honest /= static_cast<double>(network.honest_count());
  trace.quant_error_mean *= inv_n;
  trace.delta_bar *= inv_n;
  trace.xi_bar *= inv_n;
  trace.grad_mean *= inv_n;
  trace.attack_mean *= inv_n;
  trace.next_mean_all = next.colwise().mean().transpose();
  trace.err_mean_all = error_vector(trace.mean_all, optimum).norm();
  trace.err_mean_honest = error_vector(trace.mean_honest, optimum).norm();
  trace.xi_bar_norm = trace.xi_bar.norm();

  trace.lemma1_bound =
      bounds::lemma1_bound(trace.delta_bar, network.objectives().subgrad_bound, alpha, n).value;
  trace.lemma1_holds = trace.xi_bar_norm <= trace.lemma1_bound + kLemmaSlack;

  const VectorXd predicted = trace.mean_all - alpha * trace.grad_mean - trace.xi_bar + trace.attack_mean;
  trace.bookkeeping_residual = (trace.next_mean_all - predicted).cwiseAbs().maxCoeff();

  result.next.k = state.k + 1;
  result.next.iterates = std::move(next);
  return result;
}

NetworkState uniform_initial_state(const Network& network, std::uint64_t seed) {
  const auto n = network.size();
  const auto p = network.dimension();
  const auto& box = network.box();
  NetworkState state;
  state.iterates.resize(idx(n), p);
  for (std::size_t i = 0; i < n; ++i) {
    for (Eigen::Index d = 0; d < p; ++d) {
      const auto slot = static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(d);
      const double u = unit_open(mix_seed(mix_seed(seed, 0x696e6974ULL), slot));
      state.iterates(idx(i), d) = box.lo()(d) + (box.hi()(d) - box.lo()(d)) * u;
    }
  }
  return state;
}

NetworkState explicit_initial_state(const Network& network, const MatrixXd& iterates) {
  if (iterates.rows() != idx(network.size()) || iterates.cols() != network.dimension())
    throw ShapeError("initial iterates must be an n x p matrix");
  for (Eigen::Index i = 0; i < iterates.rows(); ++i)
    if (!network.box().contains(iterates.row(i).transpose()))
      throw AssumptionError("initial iterate of agent " + std::to_string(i) + " lies outside the feasible set");
  return NetworkState{0, iterates};
}

RunResult run(const Network& network, NetworkState initial, const RunOptions& options) {
  if (options.iterations < 1) throw AssumptionError("a run needs at least one iteration");

  RunResult result;
  result.traces.reserve(options.iterations);
  NetworkState state = std::move(initial);
  for (std::uint64_t k = 0; k < options.iterations; ++k) {
    const Broadcast sent = broadcast_phase(network, state);
    StepResult advanced = step(network, state, sent);
    auto& trace = advanced.trace;
    auto& diag = result.diagnostics;

    diag.max_bookkeeping_residual = std::max(diag.max_bookkeeping_residual, trace.bookkeeping_residual);
    if (trace.saturation_count > 0) {
      ++diag.saturated_steps;
    } else if (!trace.lemma1_holds) {
      ++diag.lemma1_violations;
    }
    for (Eigen::Index i = 0; i < advanced.next.iterates.rows(); ++i)
      if (!network.box().contains(advanced.next.iterates.row(i).transpose())) diag.feasible = false;

    if (options.strict && !diag.clean())
      throw InvariantError("invariant check failed at iteration " + std::to_string(k));

    result.traces.push_back(std::move(trace));
    state = std::move(advanced.next);
  }

  const auto n = network.size();
  const auto& optimum = network.objectives().optimum;
  result.final_mean_all = state.iterates.colwise().mean().transpose();
  result.final_mean_honest = VectorXd::Zero(network.dimension());
  result.final_agent_errors.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const VectorXd x = state.iterates.row(idx(i)).transpose();
    if (network.agent(i).role == Role::honest) result.final_mean_honest += x;
    result.final_agent_errors[i] = (x - optimum).norm();
  }
  result.final_mean_honest /= static_cast<double>(network.honest_count());
  result.final_err_all = (result.final_mean_all - optimum).norm();
  result.final_err_honest = (result.final_mean_honest - optimum).norm();
  result.final_state = std::move(state);
  return result;
}

}  // namespace disqaam
