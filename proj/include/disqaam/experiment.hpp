#pragma once

#include <disqaam/adversary.hpp>
#include <disqaam/bounds.hpp>
#include <disqaam/engine.hpp>
#include <disqaam/objective.hpp>
#include <disqaam/topology.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace disqaam {

struct QuantizerConfig {
  /// Exact communication; bits/interval_length are then ignored.
  bool exact = false;
  int bits = 1;
  double interval_length = 1.0;
  /// Length p; a scalar in the document is broadcast.
  VectorXd midpoint;
};

enum class TopologyKind { complete, edges };
enum class InitMode { uniform, explicit_values };

struct ExperimentConfig {
  std::string name = "experiment";
  std::size_t n = 1;
  Eigen::Index p = 1;
  TopologyKind topology = TopologyKind::complete;
  std::vector<Edge> edges;
  std::vector<Role> roles;
  std::string objective = "quadratic";
  QuadraticSplit split = QuadraticSplit::replicated;
  VectorXd box_lo;
  VectorXd box_hi;
  /// One entry per agent; entries of adversaries matter only with adversary_quantizes.
  std::vector<QuantizerConfig> quantizers;
  /// One entry per agent; zero for honest agents.
  std::vector<AttackPolicy> attacks;
  double alpha = 0.0;
  std::uint64_t iterations = 1;
  std::vector<std::uint64_t> seeds{0};
  InitMode init = InitMode::uniform;
  MatrixXd initial;
  bool adversary_quantizes = false;
  bool strict = false;
  std::filesystem::path output_dir = "out";
  bool per_agent_errors = false;
};

/// Parses and validates a JSON experiment document. Unknown keys are
/// rejected; every problem is reported with its field path in ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config(const nlohmann::json& document);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Semantic validation shared by the parser and programmatic callers.
void validate_config(const ExperimentConfig& config);

/// Named reproductions of the two-bit-width / two-population scenarios:
/// fig2a (7 honest, 1 bit), fig2b (7 honest, 5 bits), fig2c (3 honest, 1 bit).
ExperimentConfig preset(const std::string& name);
const std::vector<std::string>& preset_names();

/// Builds the static network for one seed (attack streams keyed to the seed).
Network build_network(const ExperimentConfig& config, std::uint64_t seed);
NetworkState initial_state(const ExperimentConfig& config, const Network& network, std::uint64_t seed);

/// Scenario-level inputs to the closed-form bounds; initial_error left at 0.
bounds::BoundInputs bound_inputs(const ExperimentConfig& config);

struct SeedRun {
  std::uint64_t seed = 0;
  RunResult result;
  bounds::BoundReport report;
};

struct ExperimentSummary {
  std::string name;
  std::size_t seeds = 0;
  double mean_final_honest_error = 0.0;
  double max_final_honest_error = 0.0;
  double neighborhood = 0.0;
  bool invariants_clean = true;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<SeedRun> runs;
  ExperimentSummary summary;
};

/// Runs every seed (concurrently) without touching the filesystem.
ExperimentResult simulate(const ExperimentConfig& config);

/// One row per iteration plus a final row holding x(K).
void write_trace_csv(std::ostream& out, const ExperimentConfig& config, const SeedRun& run);
nlohmann::json report_json(const ExperimentResult& result);

/// simulate + write <dir>/<name>_seed<s>.csv per seed and <dir>/<name>_bounds.json.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct SweepGrid {
  ExperimentConfig base;
  std::vector<int> bits;
  std::vector<std::pair<double, double>> attack_ranges;
  std::vector<double> alphas;
  /// Seed set used at every grid point; empty keeps the base seeds.
  std::vector<std::uint64_t> seeds;
};

struct SweepRow {
  std::optional<int> bits;
  std::optional<std::pair<double, double>> attack_range;
  double alpha = 0.0;
  ExperimentSummary summary;
};

SweepGrid parse_grid(const std::string& text);
/// Every grid point as a validated config; throws before anything runs.
std::vector<ExperimentConfig> expand_grid(const SweepGrid& grid);
std::vector<SweepRow> sweep(const SweepGrid& grid);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace disqaam
