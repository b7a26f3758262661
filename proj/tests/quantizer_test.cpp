#include <disqaam/errors.hpp>
#include <disqaam/quantizer.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace disqaam {
namespace {

VectorXd scalar(double x) { return VectorXd::Constant(1, x); }

// Independent oracle: distance from x to the closest level x' + j * step,
// |j| <= 2^(b-1), by enumeration.
double nearest_level_distance(double x, double midpoint, int bits, double length) {
  const double step = length / std::pow(2.0, bits);
  const int half = 1 << (bits - 1);
  double best = std::abs(x - midpoint);
  for (int j = -half; j <= half; ++j) best = std::min(best, std::abs(x - (midpoint + j * step)));
  return best;
}

TEST(QuantizerTest, MidpointMapsToItself) {
  const UniformQuantizer<double> q(3, 1.0, scalar(0.2));
  EXPECT_EQ(quantize(q, scalar(0.2))(0), 0.2);
  EXPECT_EQ(quantization_error(q, scalar(0.2))(0), 0.0);
}

TEST(QuantizerTest, HandEvaluatedExamples) {
  // b=2, l=1: step 0.25, 0.25 * floor(0.3/0.25 + 0.5) = 0.25 * floor(1.7) = 0.25.
  const UniformQuantizer<double> two_bit(2, 1.0, 1);
  EXPECT_DOUBLE_EQ(two_bit.step(), 0.25);
  EXPECT_DOUBLE_EQ(quantize(two_bit, scalar(0.3))(0), 0.25);
  EXPECT_NEAR(quantization_error(two_bit, scalar(0.3))(0), 0.05, 1e-15);

  // b=1, l=1: step 0.5, -0.5 * floor(0.8 + 0.5) = -0.5.
  const UniformQuantizer<double> one_bit(1, 1.0, 1);
  EXPECT_DOUBLE_EQ(quantize(one_bit, scalar(-0.4))(0), -0.5);
  EXPECT_DOUBLE_EQ(quantize(one_bit, scalar(0.3))(0), 0.5);
}

TEST(QuantizerTest, TiesRoundAwayFromMidpointViaFloor) {
  // |x|/step + 1/2 is an integer: floor keeps it, so 0.125 -> 0.25 for step 0.25.
  const UniformQuantizer<double> q(2, 1.0, 1);
  EXPECT_DOUBLE_EQ(quantize(q, scalar(0.125))(0), 0.25);
  EXPECT_DOUBLE_EQ(quantize(q, scalar(-0.125))(0), -0.25);
}

TEST(QuantizerTest, ErrorBoundFormula) {
  EXPECT_DOUBLE_EQ(error_bound(UniformQuantizer<double>(1, 1.0, 1)), 0.25);
  EXPECT_DOUBLE_EQ(error_bound(UniformQuantizer<double>(5, 1.0, 1)), 0.015625);
  EXPECT_DOUBLE_EQ(error_bound(UniformQuantizer<double>(1, 0.0, 1)), 0.0);
}

TEST(QuantizerTest, ExactModeIsIdentity) {
  const auto q = UniformQuantizer<double>::exact(2);
  VectorXd x(2);
  x << 0.123456789, -7.5;
  EXPECT_EQ(quantize(q, x), x);
  EXPECT_FALSE(is_saturated(q, x));
}

TEST(QuantizerTest, SaturatesToEndLevel) {
  const UniformQuantizer<double> q(1, 1.0, 1);
  EXPECT_TRUE(is_saturated(q, scalar(0.8)));
  EXPECT_FALSE(is_saturated(q, scalar(0.5)));
  EXPECT_DOUBLE_EQ(quantize(q, scalar(0.8))(0), 0.5);
  EXPECT_DOUBLE_EQ(quantize(q, scalar(-3.0))(0), -0.5);
  const UniformQuantizer<double> fine(5, 1.0, scalar(0.25));
  EXPECT_DOUBLE_EQ(quantize(fine, scalar(2.0))(0), 0.75);
}

TEST(QuantizerTest, ShapeAndParameterErrors) {
  const UniformQuantizer<double> q(2, 1.0, 2);
  EXPECT_THROW(quantize(q, scalar(0.1)), ShapeError);
  EXPECT_THROW(quantization_error(q, scalar(0.1)), ShapeError);
  EXPECT_THROW(UniformQuantizer<double>(0, 1.0, 1), AssumptionError);
  EXPECT_THROW(UniformQuantizer<double>(2, -1.0, 1), AssumptionError);
}

TEST(QuantizerTest, AppliesPerCoordinate) {
  const UniformQuantizer<double> q(2, 1.0, 3);
  VectorXd x(3);
  x << 0.3, -0.4, 0.0;
  const VectorXd out = quantize(q, x);
  EXPECT_DOUBLE_EQ(out(0), 0.25);
  EXPECT_DOUBLE_EQ(out(1), -0.5);
  EXPECT_DOUBLE_EQ(out(2), 0.0);
}

TEST(QuantizerTest, BruteForceSweepFiveBits) {
  const UniformQuantizer<double> q(5, 1.0, 1);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double worst = 0.0;
  for (int s = 0; s < 100000; ++s) {
    const double x = u(rng);
    const double err = std::abs(quantization_error(q, scalar(x))(0));
    worst = std::max(worst, err);
    ASSERT_NEAR(err, nearest_level_distance(x, 0.0, 5, 1.0), 1e-15) << "x=" << x;
  }
  EXPECT_LE(worst, 1.0 / 64.0);
  EXPECT_GT(worst, 0.99 / 64.0);
}

// Error bound, idempotence and sign symmetry over random quantizers.
TEST(QuantizerTest, RandomizedProperties) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int bits = 1 + static_cast<int>(rng() % 10);
    const double length = 0.1 + 2.0 * u(rng);
    const Eigen::Index p = 1 + static_cast<Eigen::Index>(rng() % 3);
    VectorXd mid(p);
    for (Eigen::Index d = 0; d < p; ++d) mid(d) = 2.0 * u(rng) - 1.0;
    const UniformQuantizer<double> q(bits, length, mid);
    for (int s = 0; s < 200; ++s) {
      VectorXd v(p);
      for (Eigen::Index d = 0; d < p; ++d) v(d) = (u(rng) - 0.5) * length;
      const VectorXd x = mid + v;
      const VectorXd qx = quantize(q, x);
      ASSERT_LE((x - qx).cwiseAbs().maxCoeff(), error_bound(q) * (1 + 1e-12));
      ASSERT_EQ(quantize(q, qx), qx);
      const VectorXd up = quantize(q, VectorXd(mid + v)) - mid;
      const VectorXd down = quantize(q, VectorXd(mid - v)) - mid;
      ASSERT_LE((up + down).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(QuantizerTest, RefinementHalvesBoundAndShrinksError) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> xs(20000);
  for (auto& x : xs) x = u(rng);
  double previous = std::numeric_limits<double>::infinity();
  for (int bits = 1; bits <= 10; ++bits) {
    const UniformQuantizer<double> q(bits, 1.0, 1);
    const UniformQuantizer<double> finer(bits + 1, 1.0, 1);
    EXPECT_DOUBLE_EQ(error_bound(finer), error_bound(q) / 2);
    double worst = 0.0;
    for (double x : xs) worst = std::max(worst, std::abs(quantization_error(q, scalar(x))(0)));
    EXPECT_LE(worst, previous);
    previous = worst;
  }
}

}  // namespace
}  // namespace disqaam
