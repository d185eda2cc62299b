#include "zk/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "zk/errors.hpp"

namespace zk {

std::array<double, 16> record_values(const EnergyRecord& r) {
  return {r.t,   r.l2,  r.wl2,    r.ux2,        r.uy2,       r.l4_4, r.uyy2, r.graduy2,
          r.delta_ux2, r.ut2, r.wut2, r.trace0, r.sup2_bound, r.sup2_meas, r.r_l2, r.r_w};
}

EnergyRecord record_from_values(const std::array<double, 16>& v) {
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10], v[11], v[12], v[13], v[14], v[15]};
}

Diagnostics::Diagnostics(const DomainSpec& domain, const GridSpec& grid)
    : domain_(domain),
      grid_(grid),
      h_(domain.L / grid.M),
      x_(grid.M + 1),
      trap_(grid.M + 1),
      wtrap_(grid.M + 1),
      lambda_(grid.N),
      basis_(grid.N, grid.K, domain.B) {
  for (int i = 0; i <= grid.M; ++i) {
    x_[i] = i * h_;
    trap_[i] = (i == 0 || i == grid.M) ? 0.5 * h_ : h_;
    wtrap_[i] = trap_[i] * (1.0 + x_[i]);
  }
  for (int j = 1; j <= grid.N; ++j) lambda_[j - 1] = basis_.lambda(j);
}

Eigen::MatrixXd Diagnostics::dx(const Eigen::MatrixXd& g) const {
  Eigen::MatrixXd out(g.rows(), g.cols());
  std::vector<double> row(g.cols()), d(g.cols());
  for (Eigen::Index j = 0; j < g.rows(); ++j) {
    for (Eigen::Index i = 0; i < g.cols(); ++i) row[i] = g(j, i);
    first_derivative(row, h_, d);
    for (Eigen::Index i = 0; i < g.cols(); ++i) out(j, i) = d[i];
  }
  return out;
}

Eigen::MatrixXd Diagnostics::dxxx(const Eigen::MatrixXd& g) const {
  Eigen::MatrixXd out(g.rows(), g.cols());
  std::vector<double> row(g.cols()), d(g.cols());
  for (Eigen::Index j = 0; j < g.rows(); ++j) {
    for (Eigen::Index i = 0; i < g.cols(); ++i) row[i] = g(j, i);
    third_derivative(row, h_, d);
    for (Eigen::Index i = 0; i < g.cols(); ++i) out(j, i) = d[i];
  }
  return out;
}

double Diagnostics::modal_sum(const Eigen::MatrixXd& a, int lambda_power, bool weighted) const {
  const Eigen::VectorXd per_mode = a.array().square().matrix() * (weighted ? wtrap_ : trap_);
  double s = 0.0;
  for (Eigen::Index j = 0; j < per_mode.size(); ++j) s += std::pow(lambda_[j], lambda_power) * per_mode[j];
  return s;
}

double Diagnostics::l2(const Eigen::MatrixXd& g) const { return modal_sum(g, 0, false); }

double Diagnostics::weighted_l2(const Eigen::MatrixXd& g) const { return modal_sum(g, 0, true); }

double Diagnostics::boundary_trace_x0(const Eigen::MatrixXd& g) const {
  const Eigen::VectorXd d = (-3.0 * g.col(0) + 4.0 * g.col(1) - g.col(2)) / (2.0 * h_);
  return d.squaredNorm();
}

std::array<double, 2> Diagnostics::sup_bound(const Eigen::MatrixXd& g) const {
  const Eigen::MatrixXd gx = dx(g);
  const double bound = 2.0 * (modal_sum(g, 0, false) + modal_sum(gx, 0, false) + modal_sum(g, 1, false) +
                              modal_sum(gx, 1, false));
  const double meas = basis_.synthesize(g).array().square().maxCoeff();
  return {bound, meas};
}

double Diagnostics::delta_ux(const Eigen::MatrixXd& g) const {
  const Eigen::MatrixXd lap = dxxx(g) - lambda_.asDiagonal() * dx(g);
  return modal_sum(lap, 0, false);
}

double Diagnostics::l4_4(const Eigen::MatrixXd& g) const {
  const Eigen::MatrixXd u = basis_.synthesize(g);
  const Eigen::RowVectorXd per_x = u.array().square().square().colwise().sum() * basis_.weight();
  return per_x.dot(trap_);
}

double Diagnostics::graduyy2(const Eigen::MatrixXd& g) const {
  return modal_sum(dx(g), 2, false) + modal_sum(g, 3, false);
}

std::array<double, 2> Diagnostics::ut_functionals(const Eigen::MatrixXd& ut) const {
  return {modal_sum(ut, 0, false), modal_sum(ut, 0, true)};
}

EnergyRecord Diagnostics::record(double t, const Eigen::MatrixXd& g, const Eigen::MatrixXd& ut) const {
  EnergyRecord r;
  r.t = t;
  const Eigen::MatrixXd gx = dx(g);
  r.l2 = modal_sum(g, 0, false);
  r.wl2 = modal_sum(g, 0, true);
  r.ux2 = modal_sum(gx, 0, false);
  r.uy2 = modal_sum(g, 1, false);
  r.l4_4 = l4_4(g);
  r.uyy2 = modal_sum(g, 2, false);
  const double uxy2 = modal_sum(gx, 1, false);
  r.graduy2 = uxy2 + r.uyy2;
  r.delta_ux2 = delta_ux(g);
  const auto ut_pair = ut_functionals(ut);
  r.ut2 = ut_pair[0];
  r.wut2 = ut_pair[1];
  r.trace0 = boundary_trace_x0(g);
  r.sup2_bound = 2.0 * (r.l2 + r.ux2 + r.uy2 + uxy2);
  r.sup2_meas = basis_.synthesize(g).array().square().maxCoeff();
  return r;
}

Eigen::MatrixXd centered_time_derivative(const Eigen::MatrixXd& prev, const Eigen::MatrixXd& next, double dt) {
  return (next - prev) / (2.0 * dt);
}

std::array<double, 2> ut_functionals(const Diagnostics& diag, const std::vector<Eigen::MatrixXd>& states, double dt) {
  if (states.size() < 3) throw InsufficientDataError("ut_functionals: need three consecutive states");
  return diag.ut_functionals(centered_time_derivative(states[0], states[2], dt));
}

namespace {

// Second-order derivative of samples f at index i on a uniform grid of spacing dt.
double time_derivative(const std::vector<double>& f, std::size_t i, double dt) {
  const std::size_t n = f.size();
  if (i == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dt);
  if (i == n - 1) return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dt);
  return (f[i + 1] - f[i - 1]) / (2.0 * dt);
}

}  // namespace

void identity_residuals(std::vector<EnergyRecord>& records) {
  if (records.size() < 3) throw InsufficientDataError("identity_residuals: need at least three records");
  const double dt = (records.back().t - records.front().t) / static_cast<double>(records.size() - 1);
  if (!(dt > 0.0)) throw InsufficientDataError("identity_residuals: records must advance in time");
  for (std::size_t i = 1; i < records.size(); ++i) {
    const double step = records[i].t - records[i - 1].t;
    if (std::abs(step - dt) > 1e-6 * dt) throw InsufficientDataError("identity_residuals: records are not uniformly spaced");
  }
  std::vector<double> l2(records.size()), wl2(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    l2[i] = records[i].l2;
    wl2[i] = records[i].wl2;
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& r = records[i];
    r.r_l2 = time_derivative(l2, i, dt) + r.trace0;
    r.r_w = time_derivative(wl2, i, dt) + r.trace0 + 3.0 * r.ux2 + r.uy2 - 0.5 * r.l4_4;
  }
}

}  // namespace zk
