#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace zk {

/// lambda_j = (j pi / B)^2, the Dirichlet eigenvalue of -d^2/dy^2 on (0, B).
double eigenvalue(int j, double B);

/// w_j(y) = sqrt(2/B) sin(j pi y / B), orthonormal in L^2(0, B).
double sine_mode(int j, double y, double B);

/// Transform plan between N modal coefficients and K midpoint quadrature
/// nodes y_k = (k - 1/2) B / K with equal weights B / K.
///
/// The rule integrates cos(m pi y / B) exactly for 0 < m < 2K, hence products
/// of sine modes whose index sum stays below 2K. analyze(synthesize(c)) = c
/// requires K >= N; exact projection of u^2 u_x needs K >= 2N + 1.
///
/// Immutable after construction; safe to share between threads.
class SineBasis {
 public:
  SineBasis(int modes, int points, double width);

  int modes() const { return modes_; }
  int points() const { return points_; }
  double width() const { return width_; }
  double weight() const { return width_ / points_; }
  const std::vector<double>& nodes() const { return nodes_; }
  double lambda(int j) const { return lambdas_[j - 1]; }

  /// Sum_j c_j w_j(y_k) for each node.
  std::vector<double> synthesize(std::span<const double> modal) const;
  /// Quadrature approximation of (f, w_j) from nodal values.
  std::vector<double> analyze(std::span<const double> values) const;
  /// (u^2 u_x, w_j) for one x-node, from the modal lines of u and u_x.
  std::vector<double> project_cubic_term(std::span<const double> u_modal, std::span<const double> ux_modal) const;

  // Column-blocked versions: each column is one x-node.
  Eigen::MatrixXd synthesize(const Eigen::MatrixXd& modal) const;  ///< N x P -> K x P
  Eigen::MatrixXd analyze(const Eigen::MatrixXd& values) const;    ///< K x P -> N x P
  Eigen::MatrixXd project_cubic_term(const Eigen::MatrixXd& u_modal, const Eigen::MatrixXd& ux_modal) const;

 private:
  int modes_;
  int points_;
  double width_;
  std::vector<double> nodes_;
  std::vector<double> lambdas_;
  Eigen::MatrixXd synth_;     // K x N, w_j(y_k)
  Eigen::MatrixXd analysis_;  // N x K, (B/K) w_j(y_k)
};

}  // namespace zk
