#pragma once

#include <disqaam/box.hpp>
#include <disqaam/types.hpp>

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace disqaam {

/// f_i with the metadata the convergence analysis needs: strong convexity
/// modulus mu, gradient Lipschitz constant L and a bound on ||g_i|| over X.
struct LocalObjective {
  Eigen::Index dimension = 0;
  std::function<double(const VectorXd&)> evaluate;
  std::function<VectorXd(const VectorXd&)> subgradient;
  double mu = 0.0;
  double lipschitz = 0.0;
  double subgrad_bound = 0.0;
};

/// How the experimental objective 1/2 x^T x is shared between the n agents.
enum class QuadraticSplit {
  /// f_i = 1/2 ||x||^2. The network-average objective (1/n) sum f_i, which
  /// the mean iterate follows, is 1/2 x^T x; mean contraction is (1 - alpha).
  replicated,
  /// f_i = ||x||^2 / (2n). The sum objective sum f_i is 1/2 x^T x; mean
  /// contraction is (1 - alpha / n).
  sum,
};

std::string to_string(QuadraticSplit split);
QuadraticSplit quadratic_split_from_string(const std::string& name);

/// The local objectives plus the network-level constants fed to the bounds.
struct ObjectiveSuite {
  std::vector<LocalObjective> locals;
  /// mu and L of the network objective for the chosen split (both 1 for the quadratic).
  double mu = 0.0;
  double lipschitz = 0.0;
  /// L-bar = max_i L-bar_i.
  double subgrad_bound = 0.0;
  VectorXd optimum;

  std::size_t size() const { return locals.size(); }
  /// sum_i f_i(x).
  double total(const VectorXd& x) const;
};

/// Quadratic suite reproducing f(x) = 1/2 x^T x. The box must contain the
/// origin so that x* = 0 stays feasible.
ObjectiveSuite quadratic_suite(std::size_t n, Eigen::Index p, const Box<double>& set,
                               QuadraticSplit split = QuadraticSplit::replicated);

}  // namespace disqaam
