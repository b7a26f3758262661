#include <disqaam/experiment.hpp>

#include <disqaam/errors.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace disqaam {
namespace {

using nlohmann::json;

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

std::string at_index(const std::string& parent, std::size_t i) { return parent + "[" + std::to_string(i) + "]"; }

/// Accumulates issues instead of stopping at the first one.
class Reader {
 public:
  void fail(const std::string& path, const std::string& message) { issues_.push_back({path, message}); }
  bool ok() const { return issues_.empty(); }
  std::vector<ConfigIssue> take() { return std::move(issues_); }

  bool expect_object(const json& node, const std::string& path) {
    if (node.is_object()) return true;
    fail(path, "expected an object");
    return false;
  }

  void reject_unknown(const json& node, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : node.items()) {
      (void)value;
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
        fail(join(path, key), "unknown key");
    }
  }

  std::optional<std::int64_t> integer(const json& node, const std::string& path) {
    if (node.is_number_integer()) return node.get<std::int64_t>();
    fail(path, "expected an integer");
    return std::nullopt;
  }

  std::optional<double> number(const json& node, const std::string& path) {
    if (node.is_number()) return node.get<double>();
    fail(path, "expected a number");
    return std::nullopt;
  }

  std::optional<bool> boolean(const json& node, const std::string& path) {
    if (node.is_boolean()) return node.get<bool>();
    fail(path, "expected a boolean");
    return std::nullopt;
  }

  std::optional<std::string> string(const json& node, const std::string& path) {
    if (node.is_string()) return node.get<std::string>();
    fail(path, "expected a string");
    return std::nullopt;
  }

  /// Scalar broadcast to length p, or an array of exactly p numbers.
  std::optional<VectorXd> vector(const json& node, const std::string& path, Eigen::Index p) {
    if (node.is_number()) return VectorXd::Constant(p, node.get<double>());
    if (!node.is_array()) {
      fail(path, "expected a number or an array of numbers");
      return std::nullopt;
    }
    if (static_cast<Eigen::Index>(node.size()) != p) {
      fail(path, "expected " + std::to_string(p) + " entries, got " + std::to_string(node.size()));
      return std::nullopt;
    }
    VectorXd out(p);
    bool good = true;
    for (std::size_t d = 0; d < node.size(); ++d) {
      auto v = number(node[d], at_index(path, d));
      if (v) out(static_cast<Eigen::Index>(d)) = *v;
      else good = false;
    }
    return good ? std::optional<VectorXd>(out) : std::nullopt;
  }

 private:
  std::vector<ConfigIssue> issues_;
};

std::optional<QuantizerConfig> read_quantizer(Reader& r, const json& node, const std::string& path, Eigen::Index p) {
  QuantizerConfig q;
  q.midpoint = VectorXd::Zero(p);
  if (node.is_string()) {
    if (node.get<std::string>() == "exact") {
      q.exact = true;
      return q;
    }
    r.fail(path, "expected \"exact\" or a quantizer object");
    return std::nullopt;
  }
  if (!r.expect_object(node, path)) return std::nullopt;
  r.reject_unknown(node, path, {"bits", "interval_length", "midpoint"});
  if (node.contains("bits")) {
    if (auto b = r.integer(node["bits"], join(path, "bits"))) {
      if (*b < 1 || *b > 52) r.fail(join(path, "bits"), "bits must lie in [1, 52]");
      else q.bits = static_cast<int>(*b);
    }
  } else {
    r.fail(join(path, "bits"), "missing required key");
  }
  if (node.contains("interval_length")) {
    if (auto l = r.number(node["interval_length"], join(path, "interval_length"))) {
      if (!(*l > 0.0)) r.fail(join(path, "interval_length"), "interval length must be positive");
      else q.interval_length = *l;
    }
  }
  if (node.contains("midpoint")) {
    if (auto m = r.vector(node["midpoint"], join(path, "midpoint"), p)) q.midpoint = *m;
  }
  return q;
}

std::optional<AttackPolicy> read_attack(Reader& r, const json& node, const std::string& path, Eigen::Index p) {
  if (!r.expect_object(node, path)) return std::nullopt;
  r.reject_unknown(node, path, {"kind", "range", "sign", "seed", "value"});
  std::string kind = "uniform";
  if (node.contains("kind")) {
    auto k = r.string(node["kind"], join(path, "kind"));
    if (!k) return std::nullopt;
    kind = *k;
  }
  if (kind == "zero") return AttackPolicy::zero();
  if (kind == "constant") {
    if (!node.contains("value")) {
      r.fail(join(path, "value"), "constant attack needs a value");
      return std::nullopt;
    }
    auto v = r.vector(node["value"], join(path, "value"), p);
    if (!v) return std::nullopt;
    try {
      auto policy = AttackPolicy::constant(*v);
      if (node.contains("sign")) {
        auto s = r.string(node["sign"], join(path, "sign"));
        if (s && *s != to_string(policy.sign())) r.fail(join(path, "sign"), "sign disagrees with the value entries");
      }
      return policy;
    } catch (const Error& e) {
      r.fail(join(path, "value"), e.what());
      return std::nullopt;
    }
  }
  if (kind != "uniform") {
    r.fail(join(path, "kind"), "unknown attack kind '" + kind + "' (expected zero, constant or uniform)");
    return std::nullopt;
  }

  double lo = 0.0;
  double hi = 1.0;
  if (node.contains("range")) {
    const auto& range = node["range"];
    if (!range.is_array() || range.size() != 2 || !range[0].is_number() || !range[1].is_number()) {
      r.fail(join(path, "range"), "expected [lo, hi]");
      return std::nullopt;
    }
    lo = range[0].get<double>();
    hi = range[1].get<double>();
  }
  AttackSign sign = AttackSign::positive;
  if (node.contains("sign")) {
    auto s = r.string(node["sign"], join(path, "sign"));
    if (!s) return std::nullopt;
    if (*s == "negative") sign = AttackSign::negative;
    else if (*s != "positive") {
      r.fail(join(path, "sign"), "expected \"positive\" or \"negative\"");
      return std::nullopt;
    }
  }
  std::uint64_t seed = 0;
  if (node.contains("seed")) {
    auto s = r.integer(node["seed"], join(path, "seed"));
    if (!s) return std::nullopt;
    if (*s < 0) {
      r.fail(join(path, "seed"), "seed must be nonnegative");
      return std::nullopt;
    }
    seed = static_cast<std::uint64_t>(*s);
  }
  try {
    return AttackPolicy::uniform(lo, hi, sign, seed);
  } catch (const Error& e) {
    r.fail(join(path, "range"), e.what());
    return std::nullopt;
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(document);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

ExperimentConfig parse_config(const json& doc) {
  Reader r;
  ExperimentConfig cfg;
  if (!r.expect_object(doc, "")) throw ConfigError(r.take());
  r.reject_unknown(doc, "",
                   {"name", "n", "p", "topology", "roles", "objective", "quantizer", "attack", "alpha", "iterations",
                    "seeds", "init", "adversary_quantizes", "strict", "output"});

  if (doc.contains("name")) {
    if (auto s = r.string(doc["name"], "name")) cfg.name = *s;
  }

  // n and p gate the shape of almost everything else.
  bool shape_ok = true;
  if (!doc.contains("n")) {
    r.fail("n", "missing required key");
    shape_ok = false;
  } else if (auto n = r.integer(doc["n"], "n"); n && *n >= 1) {
    cfg.n = static_cast<std::size_t>(*n);
  } else {
    if (n) r.fail("n", "n must be at least 1");
    shape_ok = false;
  }
  if (doc.contains("p")) {
    if (auto p = r.integer(doc["p"], "p"); p && *p >= 1) {
      cfg.p = static_cast<Eigen::Index>(*p);
    } else {
      if (p) r.fail("p", "p must be at least 1");
      shape_ok = false;
    }
  }
  if (!shape_ok) throw ConfigError(r.take());
  const auto n = cfg.n;
  const auto p = cfg.p;

  if (doc.contains("topology")) {
    const auto& t = doc["topology"];
    if (t.is_string()) {
      if (t.get<std::string>() != "complete") r.fail("topology", "expected \"complete\" or a topology object");
    } else if (r.expect_object(t, "topology")) {
      r.reject_unknown(t, "topology", {"kind", "edges"});
      std::string kind = t.contains("kind") && t["kind"].is_string() ? t["kind"].get<std::string>() : "";
      if (kind == "complete") {
        cfg.topology = TopologyKind::complete;
      } else if (kind == "edges") {
        cfg.topology = TopologyKind::edges;
        const auto& edges = t.contains("edges") ? t["edges"] : json();
        if (!edges.is_array()) {
          r.fail("topology.edges", "expected an array of [i, j] pairs");
        } else {
          for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto& pair = edges[e];
            const auto path = at_index("topology.edges", e);
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer()) {
              r.fail(path, "expected [i, j] with integer endpoints");
              continue;
            }
            const auto a = pair[0].get<std::int64_t>();
            const auto b = pair[1].get<std::int64_t>();
            if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
              r.fail(path, "endpoint outside [0, n)");
            else if (a == b)
              r.fail(path, "self-loop");
            else
              cfg.edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
          }
        }
      } else {
        r.fail("topology.kind", "expected \"complete\" or \"edges\"");
      }
    }
  }

  if (!doc.contains("roles")) {
    cfg.roles.assign(n, Role::honest);
  } else if (!doc["roles"].is_array()) {
    r.fail("roles", "expected an array of \"honest\" / \"adversarial\"");
  } else if (doc["roles"].size() != n) {
    r.fail("roles", "expected " + std::to_string(n) + " entries, got " + std::to_string(doc["roles"].size()));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& role = doc["roles"][i];
      if (role == "honest") cfg.roles.push_back(Role::honest);
      else if (role == "adversarial") cfg.roles.push_back(Role::adversarial);
      else r.fail(at_index("roles", i), "expected \"honest\" or \"adversarial\"");
    }
  }

  cfg.box_lo = VectorXd::Constant(p, -1.0);
  cfg.box_hi = VectorXd::Constant(p, 1.0);
  if (!doc.contains("objective")) {
    r.fail("objective", "missing required key");
  } else if (r.expect_object(doc["objective"], "objective")) {
    const auto& o = doc["objective"];
    r.reject_unknown(o, "objective", {"name", "split", "box"});
    if (o.contains("name")) {
      if (auto s = r.string(o["name"], "objective.name")) {
        if (*s != "quadratic") r.fail("objective.name", "unknown objective '" + *s + "'");
        cfg.objective = *s;
      }
    }
    if (o.contains("split")) {
      if (auto s = r.string(o["split"], "objective.split")) {
        if (*s == "replicated") cfg.split = QuadraticSplit::replicated;
        else if (*s == "sum") cfg.split = QuadraticSplit::sum;
        else r.fail("objective.split", "expected \"replicated\" or \"sum\"");
      }
    }
    if (o.contains("box") && r.expect_object(o["box"], "objective.box")) {
      const auto& box = o["box"];
      r.reject_unknown(box, "objective.box", {"lo", "hi"});
      if (box.contains("lo"))
        if (auto v = r.vector(box["lo"], "objective.box.lo", p)) cfg.box_lo = *v;
      if (box.contains("hi"))
        if (auto v = r.vector(box["hi"], "objective.box.hi", p)) cfg.box_hi = *v;
    }
  }

  QuantizerConfig default_quantizer;
  default_quantizer.midpoint = VectorXd::Zero(p);
  cfg.quantizers.assign(n, default_quantizer);
  if (doc.contains("quantizer")) {
    const auto& q = doc["quantizer"];
    if (q.is_array()) {
      if (q.size() != n) {
        r.fail("quantizer", "per-agent quantizer list needs " + std::to_string(n) + " entries");
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          if (q[i].is_null()) continue;
          if (auto parsed = read_quantizer(r, q[i], at_index("quantizer", i), p)) cfg.quantizers[i] = *parsed;
        }
      }
    } else if (auto parsed = read_quantizer(r, q, "quantizer", p)) {
      cfg.quantizers.assign(n, *parsed);
    }
  }

  cfg.attacks.assign(n, AttackPolicy::zero());
  if (doc.contains("attack")) {
    const auto& a = doc["attack"];
    if (a.is_array()) {
      if (a.size() != n) {
        r.fail("attack", "per-agent attack list needs " + std::to_string(n) + " entries");
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          if (a[i].is_null()) continue;
          const auto path = at_index("attack", i);
          if (i < cfg.roles.size() && cfg.roles[i] == Role::honest) {
            r.fail(path, "attack policy given for an honest agent");
            continue;
          }
          if (auto parsed = read_attack(r, a[i], path, p)) cfg.attacks[i] = *parsed;
        }
      }
    } else if (auto parsed = read_attack(r, a, "attack", p)) {
      for (std::size_t i = 0; i < cfg.roles.size(); ++i)
        if (cfg.roles[i] == Role::adversarial) cfg.attacks[i] = *parsed;
    }
  }

  if (!doc.contains("alpha")) {
    r.fail("alpha", "missing required key");
  } else if (doc["alpha"].is_array()) {
    r.fail("alpha", "per-agent step sizes are not supported; give one common alpha");
  } else if (auto a = r.number(doc["alpha"], "alpha")) {
    if (!(*a > 0.0)) r.fail("alpha", "alpha must be positive");
    else cfg.alpha = *a;
  }

  if (!doc.contains("iterations")) {
    r.fail("iterations", "missing required key");
  } else if (auto k = r.integer(doc["iterations"], "iterations")) {
    if (*k < 1) r.fail("iterations", "iterations must be at least 1");
    else cfg.iterations = static_cast<std::uint64_t>(*k);
  }

  if (doc.contains("seeds")) {
    const auto& s = doc["seeds"];
    if (!s.is_array() || s.empty()) {
      r.fail("seeds", "expected a non-empty array of nonnegative integers");
    } else {
      cfg.seeds.clear();
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (auto v = r.integer(s[i], at_index("seeds", i))) {
          if (*v < 0) r.fail(at_index("seeds", i), "seed must be nonnegative");
          else cfg.seeds.push_back(static_cast<std::uint64_t>(*v));
        }
      }
    }
  }

  if (doc.contains("init") && r.expect_object(doc["init"], "init")) {
    const auto& init = doc["init"];
    r.reject_unknown(init, "init", {"mode", "values"});
    const std::string mode = init.contains("mode") && init["mode"].is_string() ? init["mode"].get<std::string>() : "";
    if (mode == "uniform") {
      cfg.init = InitMode::uniform;
    } else if (mode == "explicit") {
      cfg.init = InitMode::explicit_values;
      const auto& values = init.contains("values") ? init["values"] : json();
      if (!values.is_array() || values.size() != n) {
        r.fail("init.values", "expected " + std::to_string(n) + " per-agent vectors");
      } else {
        cfg.initial.resize(static_cast<Eigen::Index>(n), p);
        for (std::size_t i = 0; i < n; ++i)
          if (auto v = r.vector(values[i], at_index("init.values", i), p))
            cfg.initial.row(static_cast<Eigen::Index>(i)) = v->transpose();
      }
    } else {
      r.fail("init.mode", "expected \"uniform\" or \"explicit\"");
    }
  }

  if (doc.contains("adversary_quantizes"))
    if (auto b = r.boolean(doc["adversary_quantizes"], "adversary_quantizes")) cfg.adversary_quantizes = *b;
  if (doc.contains("strict"))
    if (auto b = r.boolean(doc["strict"], "strict")) cfg.strict = *b;

  if (doc.contains("output") && r.expect_object(doc["output"], "output")) {
    const auto& out = doc["output"];
    r.reject_unknown(out, "output", {"dir", "per_agent_errors"});
    if (out.contains("dir"))
      if (auto s = r.string(out["dir"], "output.dir")) cfg.output_dir = *s;
    if (out.contains("per_agent_errors"))
      if (auto b = r.boolean(out["per_agent_errors"], "output.per_agent_errors")) cfg.per_agent_errors = *b;
  }

  if (!r.ok()) throw ConfigError(r.take());
  validate_config(cfg);
  return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
  std::vector<ConfigIssue> issues;
  const auto n = cfg.n;
  const auto p = cfg.p;
  if (n < 1) issues.push_back({"n", "n must be at least 1"});
  if (p < 1) issues.push_back({"p", "p must be at least 1"});
  if (cfg.roles.size() != n) issues.push_back({"roles", "role list length must equal n"});
  else if (std::none_of(cfg.roles.begin(), cfg.roles.end(), [](Role r) { return r == Role::honest; }))
    issues.push_back({"roles", "at least one honest agent is required"});
  if (!(cfg.alpha > 0.0)) issues.push_back({"alpha", "alpha must be positive"});
  if (cfg.iterations < 1) issues.push_back({"iterations", "iterations must be at least 1"});
  if (cfg.seeds.empty()) issues.push_back({"seeds", "at least one seed is required"});
  if (cfg.objective != "quadratic") issues.push_back({"objective.name", "unknown objective '" + cfg.objective + "'"});

  const bool box_shaped = cfg.box_lo.size() == p && cfg.box_hi.size() == p;
  if (!box_shaped) {
    issues.push_back({"objective.box", "box bounds must have p entries"});
  } else {
    if (!(cfg.box_lo.array() < cfg.box_hi.array()).all())
      issues.push_back({"objective.box", "box requires lo < hi in every coordinate"});
    else if (!((cfg.box_lo.array() <= 0.0).all() && (cfg.box_hi.array() >= 0.0).all()))
      issues.push_back({"objective.box", "box must contain the origin so that x* = 0 is feasible"});
  }

  if (cfg.topology == TopologyKind::edges) {
    bool endpoints_ok = true;
    for (std::size_t e = 0; e < cfg.edges.size(); ++e) {
      auto [a, b] = cfg.edges[e];
      if (a >= n || b >= n || a == b) {
        issues.push_back({at_index("topology.edges", e), "invalid edge"});
        endpoints_ok = false;
      }
    }
    if (endpoints_ok && !is_connected(n, cfg.edges)) issues.push_back({"topology.edges", "graph is not connected"});
  }

  if (cfg.quantizers.size() != n) issues.push_back({"quantizer", "quantizer list length must equal n"});
  else
    for (std::size_t i = 0; i < n; ++i)
      if (!cfg.quantizers[i].exact && cfg.quantizers[i].midpoint.size() != p)
        issues.push_back({at_index("quantizer", i) + ".midpoint", "midpoint must have p entries"});

  if (cfg.attacks.size() != n) {
    issues.push_back({"attack", "attack list length must equal n"});
  } else {
    for (std::size_t i = 0; i < n && i < cfg.roles.size(); ++i) {
      const auto& a = cfg.attacks[i];
      if (cfg.roles[i] == Role::honest && a.kind() != AttackKind::zero)
        issues.push_back({at_index("attack", i), "attack policy given for an honest agent"});
      if (a.kind() == AttackKind::constant && a.value().size() != p)
        issues.push_back({at_index("attack", i) + ".value", "attack vector must have p entries"});
    }
  }

  if (cfg.init == InitMode::explicit_values) {
    if (cfg.initial.rows() != static_cast<Eigen::Index>(n) || cfg.initial.cols() != p) {
      issues.push_back({"init.values", "expected an n x p matrix"});
    } else if (box_shaped) {
      for (Eigen::Index i = 0; i < cfg.initial.rows(); ++i) {
        const VectorXd x = cfg.initial.row(i).transpose();
        if ((x.array() < cfg.box_lo.array()).any() || (x.array() > cfg.box_hi.array()).any())
          issues.push_back({at_index("init.values", static_cast<std::size_t>(i)), "initial iterate outside the box"});
      }
    }
  }

  if (!issues.empty()) throw ConfigError(std::move(issues));
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2a", "fig2b", "fig2c"};
  return names;
}

ExperimentConfig preset(const std::string& name) {
  std::size_t honest = 0;
  int bits = 0;
  if (name == "fig2a") {
    honest = 7;
    bits = 1;
  } else if (name == "fig2b") {
    honest = 7;
    bits = 5;
  } else if (name == "fig2c") {
    honest = 3;
    bits = 1;
  } else {
    throw ConfigError("preset", "unknown preset '" + name + "' (expected fig2a, fig2b or fig2c)");
  }

  ExperimentConfig cfg;
  cfg.name = name;
  cfg.n = 10;
  cfg.p = 1;
  cfg.topology = TopologyKind::complete;
  cfg.roles.assign(cfg.n, Role::adversarial);
  std::fill_n(cfg.roles.begin(), honest, Role::honest);
  cfg.objective = "quadratic";
  cfg.split = QuadraticSplit::replicated;
  cfg.box_lo = VectorXd::Constant(cfg.p, -1.0);
  cfg.box_hi = VectorXd::Constant(cfg.p, 1.0);
  QuantizerConfig q;
  q.bits = bits;
  q.interval_length = 1.0;
  q.midpoint = VectorXd::Zero(cfg.p);
  cfg.quantizers.assign(cfg.n, q);
  cfg.attacks.assign(cfg.n, AttackPolicy::zero());
  for (std::size_t i = honest; i < cfg.n; ++i) cfg.attacks[i] = AttackPolicy::uniform(0.0, 1.0, AttackSign::positive, 0);
  cfg.alpha = 0.7;
  cfg.iterations = 200;
  cfg.seeds.resize(20);
  for (std::size_t s = 0; s < cfg.seeds.size(); ++s) cfg.seeds[s] = s;
  cfg.init = InitMode::uniform;
  validate_config(cfg);
  return cfg;
}

Network build_network(const ExperimentConfig& cfg, std::uint64_t seed) {
  validate_config(cfg);
  auto topology = cfg.topology == TopologyKind::complete ? build_complete(cfg.n) : build_from_edge_list(cfg.n, cfg.edges);
  Box<double> box(cfg.box_lo, cfg.box_hi);
  auto objectives = quadratic_suite(cfg.n, cfg.p, box, cfg.split);

  std::vector<AgentSpec> agents(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    auto& agent = agents[i];
    agent.role = cfg.roles[i];
    const auto& q = cfg.quantizers[i];
    agent.quantizer = q.exact ? UniformQuantizer<double>::exact(cfg.p)
                              : UniformQuantizer<double>(q.bits, q.interval_length, q.midpoint);
    agent.attack = cfg.attacks[i].reseeded(mix_seed(seed, cfg.attacks[i].seed()));
  }
  return Network(std::move(topology), std::move(objectives), std::move(box), std::move(agents), cfg.alpha,
                 cfg.adversary_quantizes);
}

NetworkState initial_state(const ExperimentConfig& cfg, const Network& network, std::uint64_t seed) {
  return cfg.init == InitMode::uniform ? uniform_initial_state(network, seed)
                                       : explicit_initial_state(network, cfg.initial);
}

bounds::BoundInputs bound_inputs(const ExperimentConfig& cfg) {
  const Box<double> box(cfg.box_lo, cfg.box_hi);
  const auto suite = quadratic_suite(cfg.n, cfg.p, box, cfg.split);

  bounds::BoundInputs in;
  in.mu = suite.mu;
  in.lipschitz = suite.lipschitz;
  in.alpha = cfg.alpha;
  in.subgrad_bound = suite.subgrad_bound;
  in.n = cfg.n;

  // The coarsest quantizer among agents that quantize dominates the bound.
  bool any_quantized = false;
  int bits = std::numeric_limits<int>::max();
  double interval = 0.0;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const bool quantizes = cfg.roles[i] == Role::honest || cfg.adversary_quantizes;
    if (!quantizes || cfg.quantizers[i].exact) continue;
    any_quantized = true;
    bits = std::min(bits, cfg.quantizers[i].bits);
    interval = std::max(interval, cfg.quantizers[i].interval_length);
  }
  in.bits = any_quantized ? bits : 1;
  in.interval_length = any_quantized ? interval : 0.0;

  for (std::size_t i = 0; i < cfg.n; ++i)
    if (cfg.roles[i] == Role::adversarial) in.attack_norm = std::max(in.attack_norm, max_attack_norm(cfg.attacks[i], cfg.p));
  return in;
}

}  // namespace disqaam
