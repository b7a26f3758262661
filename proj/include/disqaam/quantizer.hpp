#pragma once

#include <disqaam/errors.hpp>
#include <disqaam/types.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace disqaam {

/// Uniform quantizer with b bits over an interval of length l centred on a
/// midpoint x'. The step is l / 2^b and the scalar rule
///
///   Q(x) = x' + sign(x - x') * step * floor(|x - x'| / step + 1/2)
///
/// is applied coordinate by coordinate. An interval length of zero denotes
/// exact communication: Q(x) = x.
template <typename Scalar>
class UniformQuantizer {
 public:
  UniformQuantizer(int bits, Scalar interval_length, Vector<Scalar> midpoint)
      : bits_(bits), interval_length_(interval_length), midpoint_(std::move(midpoint)) {
    if (bits_ < 1) throw AssumptionError("quantizer needs at least one bit");
    if (!(interval_length_ >= Scalar(0))) throw AssumptionError("quantizer interval length must be nonnegative");
    if (midpoint_.size() == 0) throw ShapeError("quantizer midpoint must be non-empty");
  }

  /// Midpoint 0 in R^p.
  UniformQuantizer(int bits, Scalar interval_length, Eigen::Index p)
      : UniformQuantizer(bits, interval_length, Vector<Scalar>::Zero(p)) {}

  static UniformQuantizer exact(Eigen::Index p) { return UniformQuantizer(1, Scalar(0), p); }

  int bits() const { return bits_; }
  Scalar interval_length() const { return interval_length_; }
  const Vector<Scalar>& midpoint() const { return midpoint_; }
  Eigen::Index dimension() const { return midpoint_.size(); }
  bool is_exact() const { return interval_length_ == Scalar(0); }
  Scalar step() const { return interval_length_ / std::ldexp(Scalar(1), bits_); }

 private:
  int bits_;
  Scalar interval_length_;
  Vector<Scalar> midpoint_;
};

namespace detail {
template <typename Scalar, typename Derived>
void check_dimension(const UniformQuantizer<Scalar>& q, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != q.dimension())
    throw ShapeError("vector of dimension " + std::to_string(x.size()) + " given to a quantizer of dimension " +
                     std::to_string(q.dimension()));
}
}  // namespace detail

/// l / 2^(b+1): per-coordinate error bound for in-range inputs.
template <typename Scalar>
Scalar error_bound(const UniformQuantizer<Scalar>& q) {
  return q.interval_length() / std::ldexp(Scalar(1), q.bits() + 1);
}

/// True when some coordinate lies outside [x'_d - l/2, x'_d + l/2].
template <typename Scalar, typename Derived>
bool is_saturated(const UniformQuantizer<Scalar>& q, const Eigen::MatrixBase<Derived>& x) {
  detail::check_dimension(q, x);
  if (q.is_exact()) return false;
  return ((x.derived() - q.midpoint()).cwiseAbs().array() > q.interval_length() / Scalar(2)).any();
}

/// Out-of-range coordinates saturate to x'_d +- l/2, which is itself a level
/// because (l/2) / step = 2^(b-1).
template <typename Scalar, typename Derived>
Vector<Scalar> quantize(const UniformQuantizer<Scalar>& q, const Eigen::MatrixBase<Derived>& x) {
  detail::check_dimension(q, x);
  if (q.is_exact()) return x;
  const Scalar step = q.step();
  const Scalar half_range = q.interval_length() / Scalar(2);
  Vector<Scalar> out(x.size());
  for (Eigen::Index d = 0; d < x.size(); ++d) {
    const Scalar offset = std::clamp(Scalar(x(d) - q.midpoint()(d)), -half_range, half_range);
    const Scalar sign = offset > Scalar(0) ? Scalar(1) : (offset < Scalar(0) ? Scalar(-1) : Scalar(0));
    out(d) = q.midpoint()(d) + sign * step * std::floor(std::abs(offset) / step + Scalar(0.5));
  }
  return out;
}

/// x - Q(x) (the analysis' sign convention; only magnitudes enter the bounds).
template <typename Scalar, typename Derived>
Vector<Scalar> quantization_error(const UniformQuantizer<Scalar>& q, const Eigen::MatrixBase<Derived>& x) {
  return x - quantize(q, x);
}

}  // namespace disqaam
