#pragma once

#include <disqaam/types.hpp>

#include <cstdint>
#include <string>

namespace disqaam {

enum class AttackKind { zero, constant, uniform };
enum class AttackSign { positive, negative };

std::string to_string(AttackKind kind);
std::string to_string(AttackSign sign);

/// Rule producing the perturbation e_i(k) an adversarial agent adds to its
/// update. Every nonzero vector has all entries of one strict sign.
class AttackPolicy {
 public:
  /// Attack disabled: e_i(k) = 0.
  static AttackPolicy zero();
  /// Same vector at every iteration; entries must share one strict sign.
  static AttackPolicy constant(VectorXd value);
  /// Entries drawn independently from the open interval (lo, hi), negated for
  /// AttackSign::negative. Requires 0 <= lo <= hi and hi > 0.
  static AttackPolicy uniform(double lo, double hi, AttackSign sign, std::uint64_t seed);

  AttackKind kind() const { return kind_; }
  AttackSign sign() const { return sign_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const VectorXd& value() const { return value_; }
  std::uint64_t seed() const { return seed_; }

  /// Same policy keyed to a different stream.
  AttackPolicy reseeded(std::uint64_t seed) const;

 private:
  AttackKind kind_ = AttackKind::zero;
  AttackSign sign_ = AttackSign::positive;
  double lo_ = 0.0;
  double hi_ = 0.0;
  VectorXd value_;
  std::uint64_t seed_ = 0;
};

/// e_i(k) in R^p. A pure function of (policy seed, agent, k); throws
/// RoleError for honest agents and ShapeError if a constant vector is not in R^p.
VectorXd attack_vector(const AttackPolicy& policy, Role role, AgentId agent, std::uint64_t k, Eigen::Index p);

/// Upper bound on ||e_i(k)|| over all agents and iterations.
double max_attack_norm(const AttackPolicy& policy, Eigen::Index p);

/// splitmix64 finaliser; used to derive independent streams from seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Uniform double in the open interval (0, 1) from 64 random bits.
double unit_open(std::uint64_t bits);

}  // namespace disqaam
