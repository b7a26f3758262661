// Experiment runner: run <config.json> | sweep <grid.json> | preset <name>.
// Exit codes: 0 ok, 1 invariant failure in strict mode, 2 usage or config error.

#include <disqaam/errors.hpp>
#include <disqaam/experiment.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kInvariantFailure = 1;
constexpr int kUsageError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw disqaam::ConfigError("", "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void print_summary(const disqaam::ExperimentSummary& s) {
  fmt::print("{}: seeds={} mean_final_honest_error={:.6g} max_final_honest_error={:.6g} neighborhood={:.6g} "
             "invariants={}\n",
             s.name, s.seeds, s.mean_final_honest_error, s.max_final_honest_error, s.neighborhood,
             s.invariants_clean ? "clean" : "VIOLATED");
}

int finish(const disqaam::ExperimentResult& result, bool strict) {
  print_summary(result.summary);
  for (const auto& w : disqaam::bounds::make_report(disqaam::bound_inputs(result.config)).warnings)
    fmt::print("  warning: {}\n", w);
  return strict && !result.summary.invariants_clean ? kInvariantFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed subgradient simulator with quantized broadcasts and adversarial agents"};
  app.require_subcommand(1);

  std::string config_path;
  std::string grid_path;
  std::string preset_name;
  std::string out_dir;
  bool strict = false;
  bool per_agent = false;
  std::size_t seeds = 0;

  auto* run_cmd = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_flag("--strict", strict, "Exit 1 if any invariant check fails");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter grid and write a summary CSV");
  sweep_cmd->add_option("grid", grid_path, "Grid description (JSON)")->required();
  sweep_cmd->add_option("--out", out_dir, "Output directory");
  sweep_cmd->add_flag("--strict", strict, "Exit 1 if any invariant check fails");

  auto* preset_cmd = app.add_subcommand("preset", "Run a built-in scenario");
  preset_cmd->add_option("name", preset_name, "fig2a | fig2b | fig2c")
      ->required()
      ->check(CLI::IsMember(disqaam::preset_names()));
  preset_cmd->add_option("--out", out_dir, "Output directory");
  preset_cmd->add_option("--seeds", seeds, "Number of seeds (0..N-1)")->check(CLI::PositiveNumber);
  preset_cmd->add_flag("--strict", strict, "Exit 1 if any invariant check fails");
  preset_cmd->add_flag("--per-agent", per_agent, "Add per-agent error columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*run_cmd) {
      auto config = disqaam::load_config(config_path);
      if (!out_dir.empty()) config.output_dir = out_dir;
      strict = strict || config.strict;
      return finish(disqaam::run_experiment(config), strict);
    }
    if (*preset_cmd) {
      auto config = disqaam::preset(preset_name);
      if (!out_dir.empty()) config.output_dir = out_dir;
      if (seeds > 0) {
        config.seeds.resize(seeds);
        for (std::size_t s = 0; s < seeds; ++s) config.seeds[s] = s;
      }
      config.per_agent_errors = per_agent;
      return finish(disqaam::run_experiment(config), strict);
    }
    if (*sweep_cmd) {
      auto grid = disqaam::parse_grid(read_file(grid_path));
      if (!out_dir.empty()) grid.base.output_dir = out_dir;
      const auto rows = disqaam::sweep(grid);
      std::filesystem::path dir = grid.base.output_dir;
      if (const char* env = std::getenv("DISQAAM_OUT_DIR"); env && *env) dir = env;
      std::filesystem::create_directories(dir);
      const auto path = dir / (grid.base.name + "_sweep.csv");
      std::ofstream out(path, std::ios::binary);
      if (!out) throw disqaam::Error("cannot write " + path.string());
      disqaam::write_sweep_csv(out, rows);
      bool clean = true;
      for (const auto& row : rows) {
        print_summary(row.summary);
        clean = clean && row.summary.invariants_clean;
      }
      fmt::print("summary written to {}\n", path.string());
      return strict && !clean ? kInvariantFailure : kOk;
    }
  } catch (const disqaam::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kUsageError;
  } catch (const disqaam::InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return kInvariantFailure;
  } catch (const disqaam::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
