#include <disqaam/objective.hpp>

#include <disqaam/errors.hpp>

namespace disqaam {

std::string to_string(QuadraticSplit split) {
  switch (split) {
    case QuadraticSplit::replicated:
      return "replicated";
    case QuadraticSplit::sum:
      return "sum";
  }
  return "unknown";
}

QuadraticSplit quadratic_split_from_string(const std::string& name) {
  if (name == "replicated") return QuadraticSplit::replicated;
  if (name == "sum") return QuadraticSplit::sum;
  throw ConfigError("objective.split", "unknown split '" + name + "' (expected replicated or sum)");
}

double ObjectiveSuite::total(const VectorXd& x) const {
  double acc = 0.0;
  for (const auto& f : locals) acc += f.evaluate(x);
  return acc;
}

ObjectiveSuite quadratic_suite(std::size_t n, Eigen::Index p, const Box<double>& set, QuadraticSplit split) {
  if (n == 0 || p <= 0) throw InvalidSizeError("quadratic suite needs n >= 1 and p >= 1");
  if (set.dimension() != p) throw ShapeError("box dimension does not match p");
  if (!set.contains(VectorXd::Zero(p)))
    throw ConfigError("objective.box", "box must contain the origin so that x* = 0 is feasible");

  const double scale = split == QuadraticSplit::replicated ? 1.0 : 1.0 / static_cast<double>(n);

  ObjectiveSuite suite;
  suite.locals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    LocalObjective f;
    f.dimension = p;
    f.evaluate = [scale](const VectorXd& x) { return 0.5 * scale * x.squaredNorm(); };
    f.subgradient = [scale](const VectorXd& x) -> VectorXd { return scale * x; };
    f.mu = scale;
    f.lipschitz = scale;
    f.subgrad_bound = scale * set.max_norm();
    suite.locals.push_back(std::move(f));
  }
  suite.mu = 1.0;
  suite.lipschitz = 1.0;
  suite.subgrad_bound = scale * set.max_norm();
  suite.optimum = VectorXd::Zero(p);
  return suite;
}

}  // namespace disqaam
