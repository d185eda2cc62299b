#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "zk/banded.hpp"

using namespace zk;

namespace {

BandedMatrix random_band(int n, int kl, int ku, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BandedMatrix A(n, kl, ku);
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(0, i - kl); j <= std::min(n - 1, i + ku); ++j) A.at(i, j) = u(rng);
  }
  return A;
}

Eigen::MatrixXd dense(const BandedMatrix& A) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(A.size(), A.size());
  for (int i = 0; i < A.size(); ++i) {
    for (int j = 0; j < A.size(); ++j) {
      if (A.in_band(i, j)) D(i, j) = A(i, j);
    }
  }
  return D;
}

}  // namespace

TEST(Banded, MultiplyMatchesDense) {
  std::mt19937 rng(7);
  const auto A = random_band(40, 2, 3, rng);
  Eigen::VectorXd x = Eigen::VectorXd::Random(40);
  Eigen::VectorXd y(40);
  A.multiply(std::span<const double>(x.data(), 40), std::span<double>(y.data(), 40));
  EXPECT_LT((y - dense(A) * x).norm(), 1e-13);
}

TEST(Banded, SolveMatchesDenseLU) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    auto A = random_band(57, 2, 3, rng);
    for (int i = 0; i < 57; ++i) A.at(i, i) += 0.5;
    Eigen::VectorXd b = Eigen::VectorXd::Random(57);
    const Eigen::VectorXd expected = dense(A).partialPivLu().solve(b);
    const BandedLU lu(A);
    lu.solve(std::span<double>(b.data(), 57));
    EXPECT_LT((b - expected).norm() / expected.norm(), 1e-11);
  }
}

TEST(Banded, CombineUnionsBands) {
  std::mt19937 rng(3);
  const auto A = random_band(12, 2, 3, rng);
  const auto B = random_band(12, 1, 1, rng);
  const auto C = BandedMatrix::combine(1.5, 0.25, A, -2.0, B);
  EXPECT_EQ(C.lower(), 2);
  EXPECT_EQ(C.upper(), 3);
  const Eigen::MatrixXd expected = 1.5 * Eigen::MatrixXd::Identity(12, 12) + 0.25 * dense(A) - 2.0 * dense(B);
  EXPECT_LT((dense(C) - expected).norm(), 1e-14);
}

TEST(Banded, SingularMatrixThrows) {
  BandedMatrix A(4, 1, 1);
  EXPECT_THROW(BandedLU{A}, std::runtime_error);
}

TEST(Banded, OutOfBandAccessThrows) {
  BandedMatrix A(5, 1, 1);
  EXPECT_THROW(A.at(0, 3), std::out_of_range);
}
