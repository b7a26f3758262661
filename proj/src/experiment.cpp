#include <disqaam/experiment.hpp>

#include <disqaam/errors.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <future>
#include <ostream>
#include <thread>

namespace disqaam {
namespace {

using nlohmann::json;

std::string num(double v) { return fmt::format("{:.17g}", v); }

SeedRun simulate_seed(const ExperimentConfig& config, std::uint64_t seed) {
  const Network network = build_network(config, seed);
  NetworkState start = initial_state(config, network, seed);

  auto inputs = bound_inputs(config);
  inputs.initial_error = (start.iterates.colwise().mean().transpose() - network.objectives().optimum).norm();

  SeedRun out;
  out.seed = seed;
  out.report = bounds::make_report(inputs);
  out.result = run(network, std::move(start), RunOptions{config.iterations, false});
  return out;
}

ExperimentSummary summarize(const std::string& name, const std::vector<SeedRun>& runs, double neighborhood) {
  ExperimentSummary s;
  s.name = name;
  s.seeds = runs.size();
  s.neighborhood = neighborhood;
  for (const auto& r : runs) {
    s.mean_final_honest_error += r.result.final_err_honest;
    s.max_final_honest_error = std::max(s.max_final_honest_error, r.result.final_err_honest);
    s.invariants_clean = s.invariants_clean && r.result.diagnostics.clean();
  }
  if (!runs.empty()) s.mean_final_honest_error /= static_cast<double>(runs.size());
  return s;
}

json window_json(const bounds::StepWindow<double>& w) {
  return {{"lower", w.lower}, {"upper", w.upper}, {"empty", w.empty()}};
}

std::filesystem::path output_dir(const ExperimentConfig& config) {
  if (const char* env = std::getenv("DISQAAM_OUT_DIR"); env && *env) return env;
  return config.output_dir;
}

}  // namespace

ExperimentResult simulate(const ExperimentConfig& config) {
  validate_config(config);
  ExperimentResult result;
  result.config = config;
  result.runs.resize(config.seeds.size());

  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(config.seeds.size(), std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t s = w; s < config.seeds.size(); s += workers)
        result.runs[s] = simulate_seed(config, config.seeds[s]);
    }));
  }
  for (auto& job : jobs) job.get();

  result.summary = summarize(config.name, result.runs, bounds::make_report(bound_inputs(config)).neighborhood);
  return result;
}

void write_trace_csv(std::ostream& out, const ExperimentConfig& config, const SeedRun& run) {
  const auto p = config.p;
  std::string header = "k,err_mean_all,err_mean_honest";
  if (config.per_agent_errors)
    for (std::size_t i = 0; i < config.n; ++i) header += fmt::format(",err_agent_{}", i);
  header += ",delta_bar,xi_bar_norm,lemma1_bound,theorem_bound,saturation_count";
  for (const char* column : {"mean_all", "xi_bar", "grad_mean", "attack_mean"})
    for (Eigen::Index d = 0; d < p; ++d) header += fmt::format(",{}_{}", column, d);
  out << header << '\n';

  for (const auto& t : run.result.traces) {
    std::string row = fmt::format("{},{},{}", t.k, num(t.err_mean_all), num(t.err_mean_honest));
    if (config.per_agent_errors)
      for (double e : t.agent_errors) row += "," + num(e);
    row += fmt::format(",{},{},{},{},{}", num(t.delta_bar), num(t.xi_bar_norm), num(t.lemma1_bound),
                       num(run.report.per_k_bound(t.k)), t.saturation_count);
    for (const VectorXd* v : {&t.mean_all, &t.xi_bar, &t.grad_mean, &t.attack_mean})
      for (Eigen::Index d = 0; d < p; ++d) row += "," + num((*v)(d));
    out << row << '\n';
  }

  // Final state x(K); per-iteration columns are empty.
  const auto& r = run.result;
  const std::uint64_t last = config.iterations;
  std::string row = fmt::format("{},{},{}", last, num(r.final_err_all), num(r.final_err_honest));
  if (config.per_agent_errors)
    for (double e : r.final_agent_errors) row += "," + num(e);
  row += fmt::format(",,,,{},", num(run.report.per_k_bound(last)));
  for (Eigen::Index d = 0; d < p; ++d) row += "," + num(r.final_mean_all(d));
  for (Eigen::Index d = 0; d < 3 * p; ++d) row += ",";
  out << row << '\n';
}

json report_json(const ExperimentResult& result) {
  const auto& cfg = result.config;
  const auto scenario = bounds::make_report(bound_inputs(cfg));
  const auto& in = scenario.inputs;

  json doc;
  doc["name"] = cfg.name;
  doc["inputs"] = {{"mu", in.mu},
                   {"lipschitz", in.lipschitz},
                   {"alpha", in.alpha},
                   {"interval_length", in.interval_length},
                   {"bits", in.bits},
                   {"subgrad_bound", in.subgrad_bound},
                   {"attack_norm", in.attack_norm},
                   {"n", in.n}};
  doc["c1"] = scenario.c1;
  doc["c2"] = scenario.c2;
  doc["rho"] = scenario.rho;
  doc["step_window"] = window_json(scenario.window);
  doc["admissible"] = {{"step_window", scenario.admissible.step_window},
                       {"quantizer", scenario.admissible.quantizer},
                       {"subgradient", scenario.admissible.subgradient},
                       {"lemma_step", scenario.admissible.lemma_step},
                       {"contraction", scenario.admissible.contraction},
                       {"all", scenario.admissible.all()}};
  doc["neighborhood"] = scenario.neighborhood;
  doc["warnings"] = scenario.warnings;

  json seeds = json::array();
  for (const auto& r : result.runs) {
    const auto& d = r.result.diagnostics;
    seeds.push_back({{"seed", r.seed},
                     {"initial_error", r.report.inputs.initial_error},
                     {"initial_inside_attack", r.report.admissible.initial_inside_attack},
                     {"final_err_all", r.result.final_err_all},
                     {"final_err_honest", r.result.final_err_honest},
                     {"max_bookkeeping_residual", d.max_bookkeeping_residual},
                     {"lemma1_violations", d.lemma1_violations},
                     {"saturated_steps", d.saturated_steps},
                     {"feasible", d.feasible}});
  }
  doc["seeds"] = std::move(seeds);
  doc["summary"] = {{"mean_final_honest_error", result.summary.mean_final_honest_error},
                    {"max_final_honest_error", result.summary.max_final_honest_error},
                    {"invariants_clean", result.summary.invariants_clean}};
  return doc;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  auto result = simulate(config);
  const auto dir = output_dir(config);
  std::filesystem::create_directories(dir);

  for (const auto& run : result.runs) {
    const auto path = dir / fmt::format("{}_seed{}.csv", config.name, run.seed);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    write_trace_csv(out, config, run);
  }
  const auto report_path = dir / (config.name + "_bounds.json");
  std::ofstream report(report_path, std::ios::binary);
  if (!report) throw Error("cannot write " + report_path.string());
  report << report_json(result).dump(2) << '\n';
  return result;
}

SweepGrid parse_grid(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  std::vector<ConfigIssue> issues;
  if (!doc.is_object()) throw ConfigError("", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "base" && key != "preset" && key != "grid") issues.push_back({key, "unknown key"});
  }

  SweepGrid grid;
  if (doc.contains("base") == doc.contains("preset")) {
    issues.push_back({"base", "give exactly one of base or preset"});
  } else if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) issues.push_back({"preset", "expected a preset name"});
    else grid.base = preset(doc["preset"].get<std::string>());
  } else {
    try {
      grid.base = parse_config(doc["base"]);
    } catch (const ConfigError& e) {
      for (auto issue : e.issues()) {
        issue.path = issue.path.empty() ? "base" : "base." + issue.path;
        issues.push_back(std::move(issue));
      }
    }
  }

  if (!doc.contains("grid") || !doc["grid"].is_object()) {
    issues.push_back({"grid", "expected an object of axes"});
  } else {
    const auto& g = doc["grid"];
    for (const auto& [key, value] : g.items()) {
      const auto path = "grid." + key;
      if (!value.is_array()) {
        issues.push_back({path, "expected an array"});
        continue;
      }
      if (value.empty()) issues.push_back({path, "axis is empty"});
      for (std::size_t i = 0; i < value.size(); ++i) {
        const auto& v = value[i];
        const auto item = path + "[" + std::to_string(i) + "]";
        if (key == "bits") {
          if (!v.is_number_integer() || v.get<int>() < 1 || v.get<int>() > 52) issues.push_back({item, "bits must be an integer in [1, 52]"});
          else grid.bits.push_back(v.get<int>());
        } else if (key == "attack_range") {
          if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            issues.push_back({item, "expected [lo, hi]"});
          else
            grid.attack_ranges.emplace_back(v[0].get<double>(), v[1].get<double>());
        } else if (key == "alpha") {
          if (!v.is_number()) issues.push_back({item, "expected a number"});
          else grid.alphas.push_back(v.get<double>());
        } else if (key == "seeds") {
          if (!v.is_number_integer() || v.get<std::int64_t>() < 0) issues.push_back({item, "expected a nonnegative integer"});
          else grid.seeds.push_back(v.get<std::uint64_t>());
        } else {
          issues.push_back({path, "unknown axis"});
          break;
        }
      }
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return grid;
}

std::vector<ExperimentConfig> expand_grid(const SweepGrid& grid) {
  if (grid.bits.empty() && grid.attack_ranges.empty() && grid.alphas.empty())
    throw ConfigError("grid", "grid is empty: give at least one of bits, attack_range, alpha");

  const std::vector<std::optional<int>> bits =
      grid.bits.empty() ? std::vector<std::optional<int>>{std::nullopt}
                        : std::vector<std::optional<int>>(grid.bits.begin(), grid.bits.end());
  std::vector<std::optional<std::pair<double, double>>> ranges{std::nullopt};
  if (!grid.attack_ranges.empty()) ranges.assign(grid.attack_ranges.begin(), grid.attack_ranges.end());
  const std::vector<double> alphas = grid.alphas.empty() ? std::vector<double>{grid.base.alpha} : grid.alphas;

  std::vector<ExperimentConfig> points;
  std::vector<ConfigIssue> issues;
  for (const auto& b : bits) {
    for (const auto& range : ranges) {
      for (double alpha : alphas) {
        ExperimentConfig cfg = grid.base;
        std::string label = cfg.name;
        if (b) {
          for (auto& q : cfg.quantizers) q.bits = *b;
          label += fmt::format("_b{}", *b);
        }
        const auto point = fmt::format("grid point {}", points.size() + issues.size());
        if (range) {
          for (auto& a : cfg.attacks) {
            if (a.kind() != AttackKind::uniform) continue;
            try {
              a = AttackPolicy::uniform(range->first, range->second, a.sign(), a.seed());
            } catch (const Error& e) {
              issues.push_back({"grid.attack_range", point + ": " + e.what()});
            }
          }
          label += fmt::format("_e{}-{}", range->first, range->second);
        }
        cfg.alpha = alpha;
        if (!grid.alphas.empty()) label += fmt::format("_a{}", alpha);
        if (!grid.seeds.empty()) cfg.seeds = grid.seeds;
        cfg.name = label;
        try {
          validate_config(cfg);
        } catch (const ConfigError& e) {
          for (const auto& issue : e.issues()) issues.push_back({issue.path, point + ": " + issue.message});
        }
        points.push_back(std::move(cfg));
      }
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return points;
}

std::vector<SweepRow> sweep(const SweepGrid& grid) {
  const auto points = expand_grid(grid);
  std::vector<SweepRow> rows;
  rows.reserve(points.size());
  for (const auto& cfg : points) {
    SweepRow row;
    if (!grid.bits.empty()) row.bits = cfg.quantizers.front().bits;
    if (!grid.attack_ranges.empty()) {
      for (std::size_t i = 0; i < cfg.n; ++i) {
        if (cfg.attacks[i].kind() == AttackKind::uniform) {
          row.attack_range = std::make_pair(cfg.attacks[i].lo(), cfg.attacks[i].hi());
          break;
        }
      }
    }
    row.alpha = cfg.alpha;
    row.summary = simulate(cfg).summary;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "name,bits,attack_lo,attack_hi,alpha,seeds,mean_final_honest_error,max_final_honest_error,neighborhood,"
         "invariants_clean\n";
  for (const auto& r : rows) {
    out << r.summary.name << ',' << (r.bits ? std::to_string(*r.bits) : "") << ','
        << (r.attack_range ? num(r.attack_range->first) : "") << ','
        << (r.attack_range ? num(r.attack_range->second) : "") << ',' << num(r.alpha) << ',' << r.summary.seeds << ','
        << num(r.summary.mean_final_honest_error) << ',' << num(r.summary.max_final_honest_error) << ','
        << num(r.summary.neighborhood) << ',' << (r.summary.invariants_clean ? 1 : 0) << '\n';
  }
}

}  // namespace disqaam
