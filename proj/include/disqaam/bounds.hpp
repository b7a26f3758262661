#pragma once

#include <disqaam/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace disqaam::bounds {

template <typename Scalar>
struct Constants {
  Scalar c1;
  Scalar c2;
};

namespace detail {
template <typename Scalar>
void require_strong_convexity(Scalar mu, Scalar lipschitz) {
  if (!(mu > Scalar(0))) throw AssumptionError("strong convexity modulus mu must be positive");
  if (mu > lipschitz) throw AssumptionError("strong convexity requires mu <= L");
}
}  // namespace detail

/// c1 = 2 / (mu + L), c2 = 2 mu L / (mu + L).
template <typename Scalar>
Constants<Scalar> constants(Scalar mu, Scalar lipschitz) {
  detail::require_strong_convexity(mu, lipschitz);
  const Scalar sum = mu + lipschitz;
  return {Scalar(2) / sum, Scalar(2) * mu * lipschitz / sum};
}

template <typename Scalar>
struct StepWindow {
  Scalar lower;
  Scalar upper;

  bool empty() const { return lower > upper; }
  bool contains(Scalar alpha) const { return !empty() && alpha >= lower && alpha <= upper; }
};

/// Literal intersection of alpha <= 2/(mu+L) with
/// (mu+L)/(3 mu L) <= alpha <= (mu+L)/(2 mu L). May be empty.
template <typename Scalar>
StepWindow<Scalar> admissible_step_window(Scalar mu, Scalar lipschitz) {
  detail::require_strong_convexity(mu, lipschitz);
  const Scalar sum = mu + lipschitz;
  const Scalar product = mu * lipschitz;
  return {sum / (Scalar(3) * product), std::min(Scalar(2) / sum, sum / (Scalar(2) * product))};
}

/// l <= 2^b / sqrt(6).
template <typename Scalar>
bool quantizer_admissible(Scalar interval_length, int bits) {
  return interval_length <= std::ldexp(Scalar(1), bits) / std::sqrt(Scalar(6));
}

/// L-bar <= 1 / (sqrt(6) alpha).
template <typename Scalar>
bool subgradient_admissible(Scalar subgrad_bound, Scalar alpha) {
  return subgrad_bound <= Scalar(1) / (std::sqrt(Scalar(6)) * alpha);
}

/// Value plus whether the hypotheses of the bound held.
template <typename Scalar>
struct Flagged {
  Scalar value;
  bool hypotheses_hold;
};

/// Projection-error bound sqrt(8) Delta + sqrt(2) L-bar alpha / n. The
/// hypothesis alpha <= 1 is reported, not enforced.
template <typename Scalar>
Flagged<Scalar> lemma1_bound(Scalar mean_quant_error, Scalar subgrad_bound, Scalar alpha, std::size_t n) {
  if (n == 0) throw AssumptionError("lemma bound needs n >= 1");
  const Scalar value = std::sqrt(Scalar(8)) * mean_quant_error +
                       std::sqrt(Scalar(2)) * subgrad_bound * alpha / static_cast<Scalar>(n);
  return {value, alpha <= Scalar(1)};
}

/// Radius of the neighbourhood of x* the mean iterate converges to:
/// (sqrt(6) (l + 2^b L-bar alpha) + 2^b sqrt(3) ||e||) / 2^b.
template <typename Scalar>
Scalar neighborhood_size(Scalar interval_length, int bits, Scalar subgrad_bound, Scalar alpha, Scalar attack_norm) {
  const Scalar levels = std::ldexp(Scalar(1), bits);
  return (std::sqrt(Scalar(6)) * (interval_length + levels * subgrad_bound * alpha) +
          levels * std::sqrt(Scalar(3)) * attack_norm) /
         levels;
}

/// rho = 3 - 3 alpha c2.
template <typename Scalar>
Scalar contraction(Scalar alpha, Scalar c2) {
  return Scalar(3) - Scalar(3) * alpha * c2;
}

enum class ContractionStatus { contractive, non_contractive, negative };

template <typename Scalar>
ContractionStatus classify_contraction(Scalar rho) {
  if (rho < Scalar(0)) return ContractionStatus::negative;
  if (rho >= Scalar(1)) return ContractionStatus::non_contractive;
  return ContractionStatus::contractive;
}

/// rho^(k/2) ||x(0) - x*|| + sqrt(3) ||e|| + (sqrt(6) / 2^b) l + sqrt(6) L-bar alpha.
/// hypotheses_hold is false unless rho lies in [0, 1).
template <typename Scalar>
Flagged<Scalar> recursion_bound(std::uint64_t k, Scalar initial_error, Scalar alpha, Scalar c2, Scalar interval_length,
                                int bits, Scalar subgrad_bound, Scalar attack_norm) {
  const Scalar rho = contraction(alpha, c2);
  const bool contractive = classify_contraction(rho) == ContractionStatus::contractive;
  // A negative rho has no real square root; the decay term is reported as its magnitude.
  const Scalar decay = std::pow(std::abs(rho), static_cast<Scalar>(k) / Scalar(2));
  const Scalar value = decay * initial_error + std::sqrt(Scalar(3)) * attack_norm +
                       std::sqrt(Scalar(6)) / std::ldexp(Scalar(1), bits) * interval_length +
                       std::sqrt(Scalar(6)) * subgrad_bound * alpha;
  return {value, contractive};
}

/// Scenario parameters the closed-form analysis consumes.
struct BoundInputs {
  double mu = 1.0;
  double lipschitz = 1.0;
  double alpha = 0.0;
  double interval_length = 0.0;
  int bits = 1;
  double subgrad_bound = 0.0;
  double attack_norm = 0.0;
  std::size_t n = 1;
  double initial_error = 0.0;
};

struct Admissibility {
  bool step_window = false;
  bool quantizer = false;
  bool subgradient = false;
  bool lemma_step = false;
  bool contraction = false;
  /// ||x(0) - x*|| < ||e||, needed by the argument when e > 0; diagnostic only.
  bool initial_inside_attack = false;

  bool all() const { return step_window && quantizer && subgradient && lemma_step && contraction; }
};

struct BoundReport {
  BoundInputs inputs;
  double c1 = 0.0;
  double c2 = 0.0;
  double rho = 0.0;
  StepWindow<double> window{0.0, 0.0};
  Admissibility admissible;
  double neighborhood = 0.0;
  std::vector<std::string> warnings;

  double per_k_bound(std::uint64_t k) const;
};

BoundReport make_report(const BoundInputs& inputs);

}  // namespace disqaam::bounds
