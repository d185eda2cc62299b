#pragma once

#include <array>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "zk/sine_basis.hpp"
#include "zk/types.hpp"
#include "zk/x_operators.hpp"

namespace zk {

/// Monitored functionals at one time. Squared norms over D unless noted.
struct EnergyRecord {
  double t = 0;
  double l2 = 0;         ///< ||u||^2
  double wl2 = 0;        ///< ((1+x), u^2)
  double ux2 = 0;        ///< ||u_x||^2
  double uy2 = 0;        ///< ||u_y||^2
  double l4_4 = 0;       ///< ||u||_{L4}^4
  double uyy2 = 0;       ///< ||u_yy||^2
  double graduy2 = 0;    ///< ||grad u_y||^2
  double delta_ux2 = 0;  ///< ||u_xxx + u_xyy||^2
  double ut2 = 0;        ///< ||u_t||^2
  double wut2 = 0;       ///< ((1+x), u_t^2)
  double trace0 = 0;     ///< int_0^B u_x^2(0, y) dy
  double sup2_bound = 0; ///< 2(||u||^2 + ||u_x||^2 + ||u_y||^2 + ||u_xy||^2)
  double sup2_meas = 0;  ///< max of u^2 over the solver grid
  double r_l2 = 0;       ///< d/dt ||u||^2 + trace0
  double r_w = 0;        ///< d/dt wl2 + trace0 + 3||u_x||^2 + ||u_y||^2 - l4_4 / 2

  bool operator==(const EnergyRecord&) const = default;
};

inline constexpr std::array<std::string_view, 16> kRecordColumns = {
    "t",       "l2",        "wl2", "ux2",  "uy2",    "l4_4",       "uyy2",      "graduy2",
    "delta_ux2", "ut2",     "wut2", "trace0", "sup2_bound", "sup2_meas", "r_l2", "r_w"};

std::array<double, 16> record_values(const EnergyRecord& r);
EnergyRecord record_from_values(const std::array<double, 16>& v);

/// Evaluates functionals of modal states g (N x (M+1), full grid):
/// composite trapezoid in x, Parseval in y.
class Diagnostics {
 public:
  Diagnostics(const DomainSpec& domain, const GridSpec& grid);

  double l2(const Eigen::MatrixXd& g) const;
  double weighted_l2(const Eigen::MatrixXd& g) const;
  /// Sum_j (second-order one-sided d_x g_j(0))^2.
  double boundary_trace_x0(const Eigen::MatrixXd& g) const;
  /// {2(||u||^2 + ||u_x||^2 + ||u_y||^2 + ||u_xy||^2), max grid u^2}.
  std::array<double, 2> sup_bound(const Eigen::MatrixXd& g) const;
  double delta_ux(const Eigen::MatrixXd& g) const;
  double l4_4(const Eigen::MatrixXd& g) const;
  /// ||grad u_yy||^2.
  double graduyy2(const Eigen::MatrixXd& g) const;
  /// {||u_t||^2, ((1+x), u_t^2)} for a modal time derivative.
  std::array<double, 2> ut_functionals(const Eigen::MatrixXd& ut) const;

  /// Every field except r_l2 and r_w.
  EnergyRecord record(double t, const Eigen::MatrixXd& g, const Eigen::MatrixXd& ut) const;

  const std::vector<double>& x() const { return x_; }

 private:
  Eigen::MatrixXd dx(const Eigen::MatrixXd& g) const;
  Eigen::MatrixXd dxxx(const Eigen::MatrixXd& g) const;
  /// Sum_j c_j trapz(w(x) a_j(x)^2), with c_j = lambda_j^p and w = 1 or 1+x.
  double modal_sum(const Eigen::MatrixXd& a, int lambda_power, bool weighted) const;

  DomainSpec domain_;
  GridSpec grid_;
  double h_;
  std::vector<double> x_;
  Eigen::VectorXd trap_;   // trapezoid weights
  Eigen::VectorXd wtrap_;  // trapezoid weights times (1+x)
  Eigen::VectorXd lambda_;
  SineBasis basis_;
};

/// Centred time difference (next - prev) / (2 dt).
Eigen::MatrixXd centered_time_derivative(const Eigen::MatrixXd& prev, const Eigen::MatrixXd& next, double dt);

/// {u_t} from three consecutive states spaced dt, centred at the middle one,
/// then evaluated by Diagnostics::ut_functionals.
std::array<double, 2> ut_functionals(const Diagnostics& diag, const std::vector<Eigen::MatrixXd>& states, double dt);

/// Fills r_l2 and r_w by centred differences in t (second-order one-sided at
/// both ends). Needs at least three records at uniform spacing; throws
/// InsufficientDataError otherwise.
void identity_residuals(std::vector<EnergyRecord>& records);

}  // namespace zk
