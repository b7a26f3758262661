#include <disqaam/bounds.hpp>

namespace disqaam::bounds {

double BoundReport::per_k_bound(std::uint64_t k) const {
  return recursion_bound(k, inputs.initial_error, inputs.alpha, c2, inputs.interval_length, inputs.bits,
                         inputs.subgrad_bound, inputs.attack_norm)
      .value;
}

BoundReport make_report(const BoundInputs& inputs) {
  BoundReport report;
  report.inputs = inputs;
  const auto c = constants(inputs.mu, inputs.lipschitz);
  report.c1 = c.c1;
  report.c2 = c.c2;
  report.rho = contraction(inputs.alpha, c.c2);
  report.window = admissible_step_window(inputs.mu, inputs.lipschitz);
  report.neighborhood =
      neighborhood_size(inputs.interval_length, inputs.bits, inputs.subgrad_bound, inputs.alpha, inputs.attack_norm);

  auto& flags = report.admissible;
  flags.step_window = report.window.contains(inputs.alpha);
  flags.quantizer = quantizer_admissible(inputs.interval_length, inputs.bits);
  flags.subgradient = subgradient_admissible(inputs.subgrad_bound, inputs.alpha);
  flags.lemma_step = inputs.alpha <= 1.0;
  flags.contraction = classify_contraction(report.rho) == ContractionStatus::contractive;
  flags.initial_inside_attack = inputs.initial_error < inputs.attack_norm;

  if (report.window.empty()) report.warnings.emplace_back("step-size window is empty");
  else if (!flags.step_window) report.warnings.emplace_back("alpha lies outside the admissible step-size window");
  if (!flags.quantizer) report.warnings.emplace_back("interval length exceeds 2^b / sqrt(6)");
  if (!flags.subgradient) report.warnings.emplace_back("subgradient bound exceeds 1 / (sqrt(6) alpha)");
  if (!flags.lemma_step) report.warnings.emplace_back("alpha > 1 violates the projection-error lemma hypothesis");
  switch (classify_contraction(report.rho)) {
    case ContractionStatus::non_contractive:
      report.warnings.emplace_back("contraction factor rho >= 1: recursion bound does not decay");
      break;
    case ContractionStatus::negative:
      report.warnings.emplace_back("contraction factor rho < 0 violates the recursion hypothesis");
      break;
    case ContractionStatus::contractive:
      break;
  }
  if (inputs.attack_norm > 0.0 && !flags.initial_inside_attack)
    report.warnings.emplace_back("initial error is not below the attack norm");
  return report;
}

}  // namespace disqaam::bounds
