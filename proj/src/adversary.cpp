#include <disqaam/adversary.hpp>

#include <disqaam/errors.hpp>

#include <algorithm>
#include <cmath>

namespace disqaam {

std::string to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::zero:
      return "zero";
    case AttackKind::constant:
      return "constant";
    case AttackKind::uniform:
      return "uniform";
  }
  return "unknown";
}

std::string to_string(AttackSign sign) { return sign == AttackSign::positive ? "positive" : "negative"; }

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

AttackPolicy AttackPolicy::zero() { return AttackPolicy{}; }

AttackPolicy AttackPolicy::constant(VectorXd value) {
  if (value.size() == 0) throw ShapeError("constant attack vector must be non-empty");
  const bool all_positive = (value.array() > 0.0).all();
  const bool all_negative = (value.array() < 0.0).all();
  if (!all_positive && !all_negative)
    throw AssumptionError("constant attack vector entries must all be positive or all be negative");
  AttackPolicy policy;
  policy.kind_ = AttackKind::constant;
  policy.sign_ = all_positive ? AttackSign::positive : AttackSign::negative;
  policy.lo_ = value.cwiseAbs().minCoeff();
  policy.hi_ = value.cwiseAbs().maxCoeff();
  policy.value_ = std::move(value);
  return policy;
}

AttackPolicy AttackPolicy::uniform(double lo, double hi, AttackSign sign, std::uint64_t seed) {
  if (!(lo >= 0.0 && lo <= hi)) throw AssumptionError("attack range needs 0 <= lo <= hi");
  if (!(hi > 0.0)) throw AssumptionError("attack range needs hi > 0 for strictly signed entries");
  AttackPolicy policy;
  policy.kind_ = AttackKind::uniform;
  policy.sign_ = sign;
  policy.lo_ = lo;
  policy.hi_ = hi;
  policy.seed_ = seed;
  return policy;
}

AttackPolicy AttackPolicy::reseeded(std::uint64_t seed) const {
  AttackPolicy copy = *this;
  copy.seed_ = seed;
  return copy;
}

VectorXd attack_vector(const AttackPolicy& policy, Role role, AgentId agent, std::uint64_t k, Eigen::Index p) {
  if (role != Role::adversarial)
    throw RoleError("attack vector requested for honest agent " + std::to_string(agent));
  if (p < 1) throw ShapeError("attack dimension must be at least 1");

  switch (policy.kind()) {
    case AttackKind::zero:
      return VectorXd::Zero(p);
    case AttackKind::constant:
      if (policy.value().size() != p)
        throw ShapeError("constant attack vector has dimension " + std::to_string(policy.value().size()) +
                         ", expected " + std::to_string(p));
      return policy.value();
    case AttackKind::uniform: {
      const double sign = policy.sign() == AttackSign::positive ? 1.0 : -1.0;
      const std::uint64_t stream = mix_seed(mix_seed(policy.seed(), agent), k);
      VectorXd e(p);
      for (Eigen::Index d = 0; d < p; ++d) {
        const double u = unit_open(mix_seed(stream, static_cast<std::uint64_t>(d)));
        // Clamp guards lo + (hi - lo) * u rounding onto the closed endpoint when lo > 0.
        double magnitude = policy.lo() + (policy.hi() - policy.lo()) * u;
        const double floor_value = std::nextafter(policy.lo(), policy.hi());
        const double ceil_value = std::nextafter(policy.hi(), policy.lo());
        if (policy.lo() < policy.hi() && floor_value <= ceil_value)
          magnitude = std::clamp(magnitude, floor_value, ceil_value);
        e(d) = sign * magnitude;
      }
      return e;
    }
  }
  return VectorXd::Zero(p);
}

double max_attack_norm(const AttackPolicy& policy, Eigen::Index p) {
  switch (policy.kind()) {
    case AttackKind::zero:
      return 0.0;
    case AttackKind::constant:
      return policy.value().norm();
    case AttackKind::uniform:
      return policy.hi() * std::sqrt(static_cast<double>(p));
  }
  return 0.0;
}

}  // namespace disqaam
