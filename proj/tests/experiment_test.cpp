#include <disqaam/errors.hpp>
#include <disqaam/experiment.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace disqaam {
namespace {

using nlohmann::json;

json minimal_doc() {
  return json::parse(R"({"n": 1, "roles": ["honest"], "objective": {"name": "quadratic"}, "alpha": 0.5,
                         "iterations": 10})");
}

std::vector<std::string> issue_paths(const ConfigError& e) {
  std::vector<std::string> paths;
  for (const auto& issue : e.issues()) paths.push_back(issue.path);
  return paths;
}

std::vector<std::string> paths_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return issue_paths(e);
  }
  return {};
}

bool has_path(const std::vector<std::string>& paths, const std::string& path) {
  return std::find(paths.begin(), paths.end(), path) != paths.end();
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream fields(line);
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

TEST(ConfigTest, MinimalDocumentParses) {
  const auto cfg = parse_config(minimal_doc());
  EXPECT_EQ(cfg.n, 1u);
  EXPECT_EQ(cfg.roles, std::vector<Role>{Role::honest});
  EXPECT_EQ(cfg.alpha, 0.5);
  EXPECT_EQ(cfg.iterations, 10u);
  EXPECT_EQ(cfg.split, QuadraticSplit::replicated);
  EXPECT_EQ(cfg.box_lo, VectorXd::Constant(1, -1.0));
}

TEST(ConfigTest, RoleCountMismatchReportsRoles) {
  auto doc = minimal_doc();
  doc["n"] = 10;
  doc["roles"] = json::array();
  for (int i = 0; i < 9; ++i) doc["roles"].push_back("honest");
  EXPECT_TRUE(has_path(paths_of(doc), "roles"));
}

TEST(ConfigTest, NegativeAlphaReportsAlpha) {
  auto doc = minimal_doc();
  doc["alpha"] = -0.1;
  EXPECT_EQ(paths_of(doc), std::vector<std::string>{"alpha"});
}

TEST(ConfigTest, PerAgentStepSizesRejected) {
  auto doc = minimal_doc();
  doc["alpha"] = {0.5};
  EXPECT_TRUE(has_path(paths_of(doc), "alpha"));
}

TEST(ConfigTest, UnknownKeysRejectedWithPaths) {
  auto doc = minimal_doc();
  doc["colour"] = "blue";
  doc["objective"]["box"] = {{"lo", -1}, {"hi", 1}, {"mid", 0}};
  const auto paths = paths_of(doc);
  EXPECT_TRUE(has_path(paths, "colour"));
  EXPECT_TRUE(has_path(paths, "objective.box.mid"));
}

TEST(ConfigTest, CollectsSeveralIssues) {
  auto doc = minimal_doc();
  doc["iterations"] = 0;
  doc["alpha"] = 0;
  doc["quantizer"] = {{"bits", 0}};
  const auto paths = paths_of(doc);
  EXPECT_TRUE(has_path(paths, "iterations"));
  EXPECT_TRUE(has_path(paths, "alpha"));
  EXPECT_TRUE(has_path(paths, "quantizer.bits"));
}

TEST(ConfigTest, MalformedJson) {
  EXPECT_THROW(parse_config(std::string("{\"n\": 1,")), ConfigError);
}

TEST(ConfigTest, SemanticChecks) {
  auto doc = minimal_doc();
  doc["roles"] = {"adversarial"};
  EXPECT_TRUE(has_path(paths_of(doc), "roles"));

  doc = minimal_doc();
  doc["objective"]["box"] = {{"lo", 0.2}, {"hi", 1}};
  EXPECT_TRUE(has_path(paths_of(doc), "objective.box"));

  doc = minimal_doc();
  doc["n"] = 3;
  doc["roles"] = {"honest", "honest", "honest"};
  doc["topology"] = {{"kind", "edges"}, {"edges", {{0, 1}}}};
  EXPECT_TRUE(has_path(paths_of(doc), "topology.edges"));
  doc["topology"]["edges"] = {{0, 1}, {1, 5}};
  EXPECT_TRUE(has_path(paths_of(doc), "topology.edges[1]"));
}

TEST(ConfigTest, FullDocument) {
  const auto cfg = parse_config(std::string(R"({
    "name": "ring",
    "n": 4, "p": 2,
    "topology": {"kind": "edges", "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]},
    "roles": ["honest", "honest", "adversarial", "adversarial"],
    "objective": {"name": "quadratic", "split": "sum", "box": {"lo": [-1, -2], "hi": 1}},
    "quantizer": [{"bits": 3, "interval_length": 0.5, "midpoint": [0, 0.1]}, "exact", null, null],
    "attack": [null, null, {"kind": "constant", "value": [-0.2, -0.3]},
               {"kind": "uniform", "range": [0.1, 0.4], "sign": "negative", "seed": 3}],
    "alpha": 0.7, "iterations": 25, "seeds": [4, 5],
    "init": {"mode": "explicit", "values": [[0, 0], [0.5, -1.5], [1, 1], [-1, 0]]},
    "adversary_quantizes": true, "strict": true,
    "output": {"dir": "somewhere", "per_agent_errors": true}
  })"));
  EXPECT_EQ(cfg.name, "ring");
  EXPECT_EQ(cfg.edges.size(), 4u);
  EXPECT_EQ(cfg.split, QuadraticSplit::sum);
  EXPECT_EQ(cfg.box_lo(1), -2.0);
  EXPECT_EQ(cfg.box_hi(1), 1.0);
  EXPECT_EQ(cfg.quantizers[0].bits, 3);
  EXPECT_EQ(cfg.quantizers[0].midpoint(1), 0.1);
  EXPECT_TRUE(cfg.quantizers[1].exact);
  EXPECT_EQ(cfg.attacks[2].kind(), AttackKind::constant);
  EXPECT_EQ(cfg.attacks[3].sign(), AttackSign::negative);
  EXPECT_EQ(cfg.attacks[3].seed(), 3u);
  EXPECT_EQ(cfg.seeds, (std::vector<std::uint64_t>{4, 5}));
  EXPECT_EQ(cfg.init, InitMode::explicit_values);
  EXPECT_EQ(cfg.initial(1, 1), -1.5);
  EXPECT_TRUE(cfg.adversary_quantizes);
  EXPECT_TRUE(cfg.per_agent_errors);
  EXPECT_EQ(cfg.output_dir, "somewhere");

  const auto result = simulate(cfg);
  EXPECT_EQ(result.runs.size(), 2u);
  EXPECT_EQ(result.runs[0].result.traces.front().mean_all, cfg.initial.colwise().mean().transpose());
}

TEST(ConfigTest, AttackForHonestAgentRejected) {
  auto doc = minimal_doc();
  doc["attack"] = {{{"kind", "uniform"}}};
  EXPECT_TRUE(has_path(paths_of(doc), "attack[0]"));
}

TEST(PresetTest, ScenarioParameters) {
  const auto a = preset("fig2a");
  EXPECT_EQ(a.n, 10u);
  EXPECT_EQ(std::count(a.roles.begin(), a.roles.end(), Role::honest), 7);
  EXPECT_EQ(a.quantizers[0].bits, 1);
  EXPECT_EQ(a.alpha, 0.7);
  EXPECT_EQ(a.iterations, 200u);
  EXPECT_EQ(a.seeds.size(), 20u);
  EXPECT_EQ(a.attacks[9].kind(), AttackKind::uniform);
  EXPECT_EQ(a.attacks[9].lo(), 0.0);
  EXPECT_EQ(a.attacks[9].hi(), 1.0);
  EXPECT_EQ(preset("fig2b").quantizers[0].bits, 5);
  const auto c = preset("fig2c");
  EXPECT_EQ(std::count(c.roles.begin(), c.roles.end(), Role::honest), 3);
  EXPECT_THROW(preset("fig3"), ConfigError);
}

TEST(PresetTest, BoundReportFlagsOneBitQuantizer) {
  const auto report = bounds::make_report(bound_inputs(preset("fig2a")));
  EXPECT_FALSE(report.admissible.quantizer);
  EXPECT_TRUE(report.admissible.step_window);
  EXPECT_EQ(report.inputs.attack_norm, 1.0);
  EXPECT_EQ(report.inputs.bits, 1);
  EXPECT_TRUE(bounds::make_report(bound_inputs(preset("fig2b"))).admissible.quantizer);
}

TEST(TraceCsvTest, ColumnsAndBookkeeping) {
  auto cfg = preset("fig2a");
  cfg.seeds = {3};
  cfg.iterations = 40;
  cfg.per_agent_errors = true;
  const auto result = simulate(cfg);
  std::ostringstream out;
  write_trace_csv(out, cfg, result.runs[0]);
  const auto rows = read_csv(out.str());
  ASSERT_EQ(rows.size(), 1u + 40u + 1u);
  const auto& header = rows[0];
  EXPECT_EQ(header[0], "k");
  EXPECT_EQ(header[1], "err_mean_all");
  EXPECT_EQ(header[2], "err_mean_honest");
  EXPECT_EQ(header[3], "err_agent_0");
  for (const auto& row : rows) ASSERT_EQ(row.size(), header.size());

  auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  const double alpha = cfg.alpha;
  for (std::size_t r = 1; r + 1 < rows.size(); ++r) {
    const auto& now = rows[r];
    const auto& next = rows[r + 1];
    const double predicted = std::stod(now[col("mean_all_0")]) - alpha * std::stod(now[col("grad_mean_0")]) -
                             std::stod(now[col("xi_bar_0")]) + std::stod(now[col("attack_mean_0")]);
    EXPECT_NEAR(std::stod(next[col("mean_all_0")]), predicted, 1e-9) << "row " << r;
    EXPECT_NEAR(std::abs(std::stod(now[col("mean_all_0")])), std::stod(now[col("err_mean_all")]), 1e-12);
  }
  EXPECT_EQ(rows.back()[0], "40");
  EXPECT_TRUE(rows.back()[col("delta_bar")].empty());
  EXPECT_FALSE(rows.back()[col("theorem_bound")].empty());
}

TEST(TraceCsvTest, ByteIdenticalReruns) {
  auto cfg = preset("fig2c");
  cfg.seeds = {11};
  std::ostringstream a, b;
  write_trace_csv(a, cfg, simulate(cfg).runs[0]);
  write_trace_csv(b, cfg, simulate(cfg).runs[0]);
  EXPECT_EQ(a.str(), b.str());
}

TEST(RunExperimentTest, WritesArtifacts) {
  auto cfg = preset("fig2b");
  cfg.seeds = {0, 1};
  cfg.iterations = 20;
  cfg.output_dir = std::filesystem::temp_directory_path() / "disqaam_experiment_test";
  std::filesystem::remove_all(cfg.output_dir);
  const auto result = run_experiment(cfg);
  EXPECT_TRUE(std::filesystem::exists(cfg.output_dir / "fig2b_seed0.csv"));
  EXPECT_TRUE(std::filesystem::exists(cfg.output_dir / "fig2b_seed1.csv"));
  std::ifstream in(cfg.output_dir / "fig2b_bounds.json");
  const auto report = json::parse(in);
  EXPECT_EQ(report["c1"], 1.0);
  EXPECT_EQ(report["admissible"]["quantizer"], true);
  EXPECT_EQ(report["seeds"].size(), 2u);
  EXPECT_NEAR(report["neighborhood"].get<double>(), result.summary.neighborhood, 0.0);
  EXPECT_TRUE(result.summary.invariants_clean);
}

TEST(SweepTest, EmptyGridRejected) {
  EXPECT_THROW(expand_grid(SweepGrid{preset("fig2a"), {}, {}, {}, {}}), ConfigError);
  EXPECT_THROW(parse_grid(R"({"preset": "fig2a", "grid": {"bits": []}})"), ConfigError);
  EXPECT_THROW(expand_grid(parse_grid(R"({"preset": "fig2a", "grid": {}})")), ConfigError);
}

TEST(SweepTest, InvalidPointRejectedBeforeRunning) {
  const auto grid = parse_grid(R"({"preset": "fig2a", "grid": {"alpha": [0.7, -1.0]}})");
  EXPECT_THROW(expand_grid(grid), ConfigError);
  EXPECT_THROW(sweep(grid), ConfigError);
  EXPECT_THROW(parse_grid(R"({"preset": "fig2a", "grid": {"colour": [1]}})"), ConfigError);
  EXPECT_THROW(expand_grid(parse_grid(R"({"preset": "fig2a", "grid": {"attack_range": [[0.5, 0.1]]}})")),
               ConfigError);
}

TEST(SweepTest, SinglePointMatchesRunSummary) {
  const auto grid = parse_grid(R"({"preset": "fig2a", "grid": {"bits": [1], "seeds": [0, 1, 2]}})");
  const auto rows = sweep(grid);
  ASSERT_EQ(rows.size(), 1u);
  auto cfg = preset("fig2a");
  cfg.seeds = {0, 1, 2};
  const auto direct = simulate(cfg).summary;
  EXPECT_EQ(rows[0].summary.mean_final_honest_error, direct.mean_final_honest_error);
  EXPECT_EQ(rows[0].summary.max_final_honest_error, direct.max_final_honest_error);
  EXPECT_EQ(rows[0].summary.neighborhood, direct.neighborhood);
}

TEST(SweepTest, BitsSweepErrorShrinksWithBits) {
  const auto grid =
      parse_grid(R"({"preset": "fig2a", "grid": {"bits": [1, 2, 3, 4, 5, 6, 7, 8], "seeds": [0, 1, 2, 3, 4, 5, 6, 7,
                   8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19]}})");
  const auto rows = sweep(grid);
  ASSERT_EQ(rows.size(), 8u);
  std::ostringstream out;
  write_sweep_csv(out, rows);
  EXPECT_EQ(read_csv(out.str()).size(), 9u);
  // Non-increasing up to seed noise: each row within 5% of the running minimum.
  double best = rows[0].summary.mean_final_honest_error;
  for (const auto& row : rows) {
    EXPECT_LE(row.summary.mean_final_honest_error, best * 1.05) << "bits " << *row.bits;
    best = std::min(best, row.summary.mean_final_honest_error);
    EXPECT_LE(row.summary.neighborhood, rows[0].summary.neighborhood);
  }
  EXPECT_LT(rows.back().summary.mean_final_honest_error, rows.front().summary.mean_final_honest_error);
}

}  // namespace
}  // namespace disqaam
