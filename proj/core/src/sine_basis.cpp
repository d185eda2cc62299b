#include "zk/sine_basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zk {

double eigenvalue(int j, double B) {
  if (j < 1) throw std::invalid_argument("eigenvalue: mode index must be >= 1");
  if (!(B > 0.0)) throw std::invalid_argument("eigenvalue: width must be positive");
  const double k = j * std::numbers::pi / B;
  return k * k;
}

double sine_mode(int j, double y, double B) {
  return std::sqrt(2.0 / B) * std::sin(j * std::numbers::pi * y / B);
}

SineBasis::SineBasis(int modes, int points, double width)
    : modes_(modes), points_(points), width_(width), synth_(points, modes), analysis_(modes, points) {
  if (modes < 1) throw std::invalid_argument("SineBasis: need at least one mode");
  if (points < modes) throw std::invalid_argument("SineBasis: need K >= N quadrature nodes");
  if (!(width > 0.0)) throw std::invalid_argument("SineBasis: width must be positive");

  nodes_.resize(points);
  for (int k = 0; k < points; ++k) nodes_[k] = (k + 0.5) * width / points;
  lambdas_.resize(modes);
  for (int j = 1; j <= modes; ++j) lambdas_[j - 1] = eigenvalue(j, width);

  for (int k = 0; k < points; ++k) {
    for (int j = 1; j <= modes; ++j) synth_(k, j - 1) = sine_mode(j, nodes_[k], width);
  }
  analysis_ = weight() * synth_.transpose();
}

std::vector<double> SineBasis::synthesize(std::span<const double> modal) const {
  if (static_cast<int>(modal.size()) != modes_) throw std::invalid_argument("synthesize: expected N coefficients");
  Eigen::Map<const Eigen::VectorXd> c(modal.data(), modes_);
  Eigen::VectorXd v = synth_ * c;
  return {v.data(), v.data() + v.size()};
}

std::vector<double> SineBasis::analyze(std::span<const double> values) const {
  if (static_cast<int>(values.size()) != points_) throw std::invalid_argument("analyze: expected K values");
  Eigen::Map<const Eigen::VectorXd> f(values.data(), points_);
  Eigen::VectorXd c = analysis_ * f;
  return {c.data(), c.data() + c.size()};
}

std::vector<double> SineBasis::project_cubic_term(std::span<const double> u_modal,
                                                  std::span<const double> ux_modal) const {
  const auto u = synthesize(u_modal);
  const auto ux = synthesize(ux_modal);
  std::vector<double> prod(points_);
  for (int k = 0; k < points_; ++k) prod[k] = u[k] * u[k] * ux[k];
  return analyze(prod);
}

Eigen::MatrixXd SineBasis::synthesize(const Eigen::MatrixXd& modal) const {
  if (modal.rows() != modes_) throw std::invalid_argument("synthesize: expected N rows");
  return synth_ * modal;
}

Eigen::MatrixXd SineBasis::analyze(const Eigen::MatrixXd& values) const {
  if (values.rows() != points_) throw std::invalid_argument("analyze: expected K rows");
  return analysis_ * values;
}

Eigen::MatrixXd SineBasis::project_cubic_term(const Eigen::MatrixXd& u_modal, const Eigen::MatrixXd& ux_modal) const {
  const Eigen::MatrixXd u = synthesize(u_modal);
  const Eigen::MatrixXd ux = synthesize(ux_modal);
  return analyze((u.array().square() * ux.array()).matrix());
}

}  // namespace zk
