#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace disqaam {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;

using AgentId = std::size_t;

enum class Role { honest, adversarial };

}  // namespace disqaam
