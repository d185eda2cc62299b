#include "zk/solver.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "zk/errors.hpp"

namespace zk {

LinearOperatorPlan build_plan(const XOperators& ops, const SineBasis& basis, double dt, TimeScheme scheme) {
  LinearOperatorPlan plan;
  plan.dt = dt;
  plan.scheme = scheme;
  const double alpha = scheme == TimeScheme::sbdf2 ? 1.5 : 1.0;
  const double theta = scheme == TimeScheme::sbdf2 ? dt : 0.5 * dt;
  for (int j = 1; j <= basis.modes(); ++j) {
    const double lam = basis.lambda(j);
    plan.main.emplace_back(BandedMatrix::combine(alpha, theta, ops.d3, -theta * lam, ops.d1));
    plan.half.emplace_back(BandedMatrix::combine(1.0, 0.5 * dt, ops.d3, -0.5 * dt * lam, ops.d1));
    if (scheme == TimeScheme::cn_ab2) {
      plan.explicit_.push_back(BandedMatrix::combine(1.0, -0.5 * dt, ops.d3, 0.5 * dt * lam, ops.d1));
    }
  }
  return plan;
}

GalerkinSolver::GalerkinSolver(const DomainSpec& domain, const GridSpec& grid, TimeScheme scheme,
                               std::optional<ManufacturedSolution> forcing, bool nonlinear)
    : domain_(domain),
      grid_(grid),
      scheme_(scheme),
      forcing_(forcing),
      nonlinear_(nonlinear),
      ops_((domain.validate(), grid.validate(), build_x_operators(grid, domain))),
      basis_(grid.N, grid.K, domain.B),
      plan_(build_plan(ops_, basis_, grid.dt, scheme)) {}

std::vector<double> GalerkinSolver::x_nodes() const {
  std::vector<double> x(grid_.M + 1);
  for (int i = 0; i <= grid_.M; ++i) x[i] = i * ops_.h;
  return x;
}

ModalState GalerkinSolver::project(const InitialData& u0) const {
  const int M = grid_.M;
  const auto& y = basis_.nodes();
  Eigen::MatrixXd values(grid_.K, M + 1);
  for (int i = 0; i <= M; ++i) {
    const double x = i * ops_.h;
    for (int k = 0; k < grid_.K; ++k) values(k, i) = u0.value(x, y[k], domain_);
  }
  ModalState s;
  s.g = basis_.analyze(values);
  s.g.col(0).setZero();
  s.g.col(M).setZero();
  return s;
}

ModalState GalerkinSolver::initialize(const InitialData& u0) const {
  const auto report = validate_compatibility(u0, domain_, grid_);
  if (!report.ok) {
    throw std::invalid_argument("initial data violates the boundary compatibility conditions (max trace " +
                                std::to_string(report.max_trace) + ", max u_x(L) " +
                                std::to_string(report.max_dx_at_L) + ")");
  }
  return project(u0);
}

Eigen::MatrixXd GalerkinSolver::interior(const Eigen::MatrixXd& g) const {
  return g.middleCols(1, ops_.unknowns());
}

void GalerkinSolver::scatter(const Eigen::MatrixXd& unknowns, Eigen::MatrixXd& g) const {
  const int M = grid_.M;
  const int n = ops_.unknowns();
  g.resize(grid_.N, M + 1);
  g.col(0).setZero();
  g.middleCols(1, n) = unknowns;
  g.col(M - 1) = XOperators::kClosureRatio * unknowns.col(n - 1);
  g.col(M).setZero();
}

Eigen::MatrixXd GalerkinSolver::x_derivative(const Eigen::MatrixXd& g) const {
  // Centred differences at the interior unknowns, matching D1.
  const int n = ops_.unknowns();
  return (g.middleCols(2, n) - g.middleCols(0, n)) / (2.0 * ops_.h);
}

Eigen::MatrixXd GalerkinSolver::nonlinear_term(const Eigen::MatrixXd& g) const {
  if (!nonlinear_) return Eigen::MatrixXd::Zero(grid_.N, ops_.unknowns());
  return basis_.project_cubic_term(interior(g), x_derivative(g));
}

Eigen::MatrixXd GalerkinSolver::forcing_term(double t) const {
  const int n = ops_.unknowns();
  if (!forcing_) return Eigen::MatrixXd::Zero(grid_.N, n);
  const auto& y = basis_.nodes();
  Eigen::MatrixXd values(grid_.K, n);
  for (int r = 0; r < n; ++r) {
    const double x = (r + 1) * ops_.h;
    for (int k = 0; k < grid_.K; ++k) values(k, r) = forcing_->forcing(x, y[k], t, domain_);
  }
  return basis_.analyze(values);
}

Eigen::MatrixXd GalerkinSolver::solve(const std::vector<BandedLU>& lus, Eigen::MatrixXd rhs) const {
  // Row j of rhs is the right-hand side of mode j; solve each in place.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = rhs;
  for (int j = 0; j < grid_.N; ++j) lus[j].solve(std::span<double>(rows.row(j).data(), rows.cols()));
  return rows;
}

Eigen::MatrixXd GalerkinSolver::apply_op(const Eigen::MatrixXd& u) const {
  // (I - dt/2 A_j) u_j for each mode.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> in = u;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out(in.rows(), in.cols());
  for (int j = 0; j < grid_.N; ++j) {
    plan_.explicit_[j].multiply(std::span<const double>(in.row(j).data(), in.cols()),
                                std::span<double>(out.row(j).data(), out.cols()));
  }
  return out;
}

void GalerkinSolver::check_finite(const ModalState& s) const {
  const double m = s.max_abs();
  if (!std::isfinite(m) || m > kBlowUp || !s.g.allFinite()) throw BlowUpError(s.t, std::isfinite(m) ? m : INFINITY);
}

ModalState GalerkinSolver::bootstrap(const ModalState& state) const {
  // Two half steps of IMEX Euler: (I + dt/2 A) g* = g + dt/2 (f - N(g)).
  const double half = 0.5 * grid_.dt;
  const Eigen::MatrixXd n0 = nonlinear_term(state.g);
  Eigen::MatrixXd mid;
  scatter(solve(plan_.half, interior(state.g) + half * (forcing_term(state.t + half) - n0)), mid);
  Eigen::MatrixXd end;
  scatter(solve(plan_.half, interior(mid) + half * (forcing_term(state.t + grid_.dt) - nonlinear_term(mid))), end);

  ModalState next;
  next.t = state.t + grid_.dt;
  next.step = state.step + 1;
  next.g = std::move(end);
  next.g_prev = state.g;
  next.n_prev = n0;
  next.has_history = true;
  return next;
}

ModalState GalerkinSolver::step(const ModalState& state) const {
  if (state.g.rows() != grid_.N || state.g.cols() != grid_.M + 1) {
    throw std::invalid_argument("step: state shape does not match the grid");
  }
  ModalState next;
  if (!state.has_history) {
    next = bootstrap(state);
  } else {
    const double dt = grid_.dt;
    const Eigen::MatrixXd nn = nonlinear_term(state.g);
    Eigen::MatrixXd rhs;
    if (scheme_ == TimeScheme::sbdf2) {
      rhs = 2.0 * interior(state.g) - 0.5 * interior(state.g_prev) +
            dt * (forcing_term(state.t + dt) - 2.0 * nn + state.n_prev);
    } else {
      rhs = apply_op(interior(state.g)) + dt * (forcing_term(state.t + 0.5 * dt) - 1.5 * nn + 0.5 * state.n_prev);
    }
    scatter(solve(plan_.main, std::move(rhs)), next.g);
    next.t = state.t + dt;
    next.step = state.step + 1;
    next.g_prev = state.g;
    next.n_prev = nn;
    next.has_history = true;
  }
  check_finite(next);
  return next;
}

RunResult run(const RunConfig& config, const RunOptions& options) {
  config.validate();
  const GalerkinSolver solver(config.domain, config.grid, config.scheme, config.manufactured(), options.nonlinear);
  const Diagnostics diag(config.domain, config.grid);
  const double dt = config.grid.dt;
  const std::int64_t steps = config.grid.steps();

  RunResult result;
  ModalState state = solver.initialize(config.initial_data());
  const double l2_0 = diag.l2(state.g);

  // Window of the last three states (oldest first) for the u_t reconstruction.
  std::deque<Eigen::MatrixXd> window{state.g};
  double trace_prev = diag.boundary_trace_x0(state.g);
  double gyy_prev = diag.graduyy2(state.g);

  auto emit = [&](std::int64_t n, const Eigen::MatrixXd& g, const Eigen::MatrixXd& ut) {
    if (n % config.cadence == 0) result.records.push_back(diag.record(n * dt, g, ut));
  };
  auto snapshot = [&](const ModalState& s) {
    if (options.snapshot_every > 0 && options.on_snapshot && s.step % options.snapshot_every == 0) options.on_snapshot(s);
  };
  snapshot(state);

  if (steps == 0) {
    emit(0, state.g, Eigen::MatrixXd::Zero(state.g.rows(), state.g.cols()));
  }
  for (std::int64_t n = 1; n <= steps; ++n) {
    try {
      state = solver.step(state);
    } catch (const BlowUpError& e) {
      result.blow_up = e;
      break;
    }
    snapshot(state);
    window.push_back(state.g);
    if (window.size() > 3) window.pop_front();

    const double trace = diag.boundary_trace_x0(state.g);
    const double gyy = diag.graduyy2(state.g);
    result.trace_integral += 0.5 * dt * (trace + trace_prev);
    result.graduyy_integral += 0.5 * dt * (gyy + gyy_prev);
    trace_prev = trace;
    gyy_prev = gyy;
    result.max_abs_budget_residual =
        std::max(result.max_abs_budget_residual, std::abs(diag.l2(state.g) + result.trace_integral - l2_0));

    if (n == 1) {
      if (steps == 1) {
        const Eigen::MatrixXd ut = (window[1] - window[0]) / dt;
        emit(0, window[0], ut);
        emit(1, window[1], ut);
      }
      continue;
    }
    if (n == 2) emit(0, window[0], (-3.0 * window[0] + 4.0 * window[1] - window[2]) / (2.0 * dt));
    emit(n - 1, window[1], centered_time_derivative(window[0], window[2], dt));
    if (n == steps) emit(n, window[2], (3.0 * window[2] - 4.0 * window[1] + window[0]) / (2.0 * dt));
  }

  result.budget_residual = diag.l2(state.g) + result.trace_integral - l2_0;
  if (result.records.size() >= 3) identity_residuals(result.records);
  result.final_state = std::move(state);
  return result;
}

}  // namespace zk
