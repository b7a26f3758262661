#pragma once

#include <disqaam/errors.hpp>
#include <disqaam/types.hpp>

#include <string>

namespace disqaam {

/// Axis-aligned feasible set X = [lo, hi] with lo < hi componentwise.
template <typename Scalar>
class Box {
 public:
  Box(Vector<Scalar> lo, Vector<Scalar> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() == 0 || lo_.size() != hi_.size())
      throw ShapeError("box bounds must be non-empty and of equal dimension");
    if (!(lo_.array() < hi_.array()).all()) throw AssumptionError("box requires lo < hi in every coordinate");
  }

  /// [lo, hi]^p.
  static Box cube(Eigen::Index p, Scalar lo, Scalar hi) {
    return Box(Vector<Scalar>::Constant(p, lo), Vector<Scalar>::Constant(p, hi));
  }

  Eigen::Index dimension() const { return lo_.size(); }
  const Vector<Scalar>& lo() const { return lo_; }
  const Vector<Scalar>& hi() const { return hi_; }

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& x) const {
    return x.size() == dimension() && (x.array() >= lo_.array()).all() && (x.array() <= hi_.array()).all();
  }

  /// Largest Euclidean norm attained on the box (always at a corner).
  Scalar max_norm() const { return lo_.cwiseAbs().cwiseMax(hi_.cwiseAbs()).norm(); }

 private:
  Vector<Scalar> lo_;
  Vector<Scalar> hi_;
};

namespace detail {
template <typename Scalar, typename Derived>
void check_dimension(const Box<Scalar>& set, const Eigen::MatrixBase<Derived>& h) {
  if (h.size() != set.dimension())
    throw ShapeError("vector of dimension " + std::to_string(h.size()) + " projected onto a box of dimension " +
                     std::to_string(set.dimension()));
}
}  // namespace detail

/// [h]_X: componentwise clamp, the Euclidean nearest point of the box.
template <typename Scalar, typename Derived>
Vector<Scalar> project(const Box<Scalar>& set, const Eigen::MatrixBase<Derived>& h) {
  detail::check_dimension(set, h);
  return h.derived().cwiseMax(set.lo()).cwiseMin(set.hi());
}

/// xi(h) = h - [h]_X; zero exactly when h is feasible.
template <typename Scalar, typename Derived>
Vector<Scalar> projection_error(const Box<Scalar>& set, const Eigen::MatrixBase<Derived>& h) {
  return h - project(set, h);
}

}  // namespace disqaam
