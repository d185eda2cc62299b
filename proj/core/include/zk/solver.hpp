#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "zk/banded.hpp"
#include "zk/errors.hpp"
#include "zk/functionals.hpp"
#include "zk/sine_basis.hpp"
#include "zk/types.hpp"
#include "zk/x_operators.hpp"

namespace zk {

/// Galerkin coefficients g(j-1, i) = g_j(x_i, t) on the full x-grid, plus the
/// one-step history needed by the two-step schemes.
struct ModalState {
  double t = 0.0;
  std::int64_t step = 0;
  Eigen::MatrixXd g;       ///< N x (M+1)
  Eigen::MatrixXd g_prev;  ///< state one step back (valid when has_history)
  Eigen::MatrixXd n_prev;  ///< nonlinear term of g_prev on the interior unknowns, N x (M-2)
  bool has_history = false;

  double max_abs() const { return g.size() == 0 ? 0.0 : g.cwiseAbs().maxCoeff(); }
};

/// Per-mode LU factors of the implicit operators.
struct LinearOperatorPlan {
  double dt = 0.0;
  TimeScheme scheme = TimeScheme::sbdf2;
  std::vector<BandedLU> main;          ///< 1.5 I + dt A_j (sbdf2) or I + dt/2 A_j (cn-ab2)
  std::vector<BandedLU> half;          ///< I + dt/2 A_j, used by the bootstrap step
  std::vector<BandedMatrix> explicit_; ///< I - dt/2 A_j (cn-ab2 only)
};

/// A_j = D3 - lambda_j D1 on the interior unknowns.
LinearOperatorPlan build_plan(const XOperators& ops, const SineBasis& basis, double dt, TimeScheme scheme);

/// Stepper for the modal system g_jt + g_jxxx - lambda_j g_jx + (u^2 u_x, w_j) = f_j.
class GalerkinSolver {
 public:
  GalerkinSolver(const DomainSpec& domain, const GridSpec& grid, TimeScheme scheme = TimeScheme::sbdf2,
                 std::optional<ManufacturedSolution> forcing = std::nullopt, bool nonlinear = true);

  /// Validates compatibility, then projects. Throws std::invalid_argument on failure.
  ModalState initialize(const InitialData& u0) const;
  /// Projection g_j(x_i) = (u0(x_i, .), w_j) without the compatibility gate.
  ModalState project(const InitialData& u0) const;

  /// One time step. Throws BlowUpError when a coefficient is non-finite or exceeds kBlowUp.
  ModalState step(const ModalState& state) const;

  /// (u^2 u_x, w_j) on the interior unknowns, N x (M-2).
  Eigen::MatrixXd nonlinear_term(const Eigen::MatrixXd& g) const;
  /// Modal projection of the forcing on the interior unknowns at time t (zero when unforced).
  Eigen::MatrixXd forcing_term(double t) const;

  const DomainSpec& domain() const { return domain_; }
  const GridSpec& grid() const { return grid_; }
  const XOperators& operators() const { return ops_; }
  const SineBasis& basis() const { return basis_; }
  const LinearOperatorPlan& plan() const { return plan_; }
  std::vector<double> x_nodes() const;

  static constexpr double kBlowUp = 1e6;

 private:
  Eigen::MatrixXd x_derivative(const Eigen::MatrixXd& g) const;
  Eigen::MatrixXd interior(const Eigen::MatrixXd& g) const;
  void scatter(const Eigen::MatrixXd& unknowns, Eigen::MatrixXd& g) const;
  Eigen::MatrixXd solve(const std::vector<BandedLU>& lus, Eigen::MatrixXd rhs) const;
  Eigen::MatrixXd apply_op(const Eigen::MatrixXd& u) const;
  ModalState bootstrap(const ModalState& state) const;
  void check_finite(const ModalState& s) const;

  DomainSpec domain_;
  GridSpec grid_;
  TimeScheme scheme_;
  std::optional<ManufacturedSolution> forcing_;
  bool nonlinear_;
  XOperators ops_;
  SineBasis basis_;
  LinearOperatorPlan plan_;
};

struct RunOptions {
  int snapshot_every = 0;  ///< steps between snapshots; 0 disables
  std::function<void(const ModalState&)> on_snapshot;
  bool nonlinear = true;
};

struct RunResult {
  std::vector<EnergyRecord> records;
  ModalState final_state;
  std::optional<BlowUpError> blow_up;
  double trace_integral = 0.0;    ///< int_0^t sum_j (d_x g_j(0))^2, trapezoid over every step
  double budget_residual = 0.0;   ///< l2(t) + trace_integral - l2(0) at the last completed step
  double max_abs_budget_residual = 0.0;  ///< max over completed steps of |R(t)|
  double graduyy_integral = 0.0;  ///< int_0^t ||grad u_yy||^2, trapezoid over every step
};

/// Advances config from t = 0 to T. Records are emitted at every step that is
/// a multiple of config.cadence, with u_t from centred differences of the
/// neighbouring steps (second-order one-sided at t = 0 and at the last step).
/// A blow-up stops the run; records completed so far are returned.
RunResult run(const RunConfig& config, const RunOptions& options = {});

}  // namespace zk
