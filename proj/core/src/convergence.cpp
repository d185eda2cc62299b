#include "zk/convergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "zk/errors.hpp"
#include "zk/functionals.hpp"
#include "zk/solver.hpp"

namespace zk {

double observed_order(double a, double b) {
  if (a == 0.0 || b == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::log2(std::abs(a) / std::abs(b));
}

namespace {

double manufactured_error(const RunConfig& cfg, const ModalState& s) {
  const auto w = cfg.manufactured();
  if (!w) return std::numeric_limits<double>::quiet_NaN();
  const SineBasis basis(cfg.grid.N, cfg.grid.K, cfg.domain.B);
  const Eigen::MatrixXd u = basis.synthesize(s.g);
  const double h = cfg.domain.L / cfg.grid.M;
  double err = 0.0;
  for (int i = 0; i <= cfg.grid.M; ++i) {
    for (int k = 0; k < cfg.grid.K; ++k) {
      err = std::max(err, std::abs(u(k, i) - w->value(i * h, basis.nodes()[k], s.t, cfg.domain)));
    }
  }
  return err;
}

}  // namespace

ConvergenceTable refinement_study(const RunConfig& base, int levels) {
  if (levels < 2) throw std::invalid_argument("refinement_study: need at least two levels");
  base.validate();
  ConvergenceTable table;
  for (int k = 0; k < levels; ++k) {
    RunConfig cfg = base;
    cfg.grid.M = base.grid.M << k;
    cfg.grid.dt = base.grid.dt / (1 << k);
    const RunResult r = run(cfg);
    if (r.blow_up) throw *r.blow_up;

    ConvergenceLevel lv;
    lv.M = cfg.grid.M;
    lv.dt = cfg.grid.dt;
    lv.max_error = manufactured_error(cfg, r.final_state);
    for (const auto& rec : r.records) {
      lv.max_abs_r_l2 = std::max(lv.max_abs_r_l2, std::abs(rec.r_l2));
      lv.max_abs_r_w = std::max(lv.max_abs_r_w, std::abs(rec.r_w));
    }
    lv.budget_residual = r.budget_residual;
    lv.max_abs_budget = r.max_abs_budget_residual;
    if (!r.records.empty()) lv.l2_0 = r.records.front().l2;
    table.levels.push_back(lv);
  }
  for (int k = 0; k + 1 < levels; ++k) {
    const auto& a = table.levels[k];
    const auto& b = table.levels[k + 1];
    table.error_orders.push_back(observed_order(a.max_error, b.max_error));
    table.r_l2_orders.push_back(observed_order(a.max_abs_r_l2, b.max_abs_r_l2));
    table.r_w_orders.push_back(observed_order(a.max_abs_r_w, b.max_abs_r_w));
    table.budget_orders.push_back(observed_order(a.budget_residual, b.budget_residual));
    table.max_budget_orders.push_back(observed_order(a.max_abs_budget, b.max_abs_budget));
  }
  return table;
}

ConvergenceTable convergence_study(const RunConfig& base, int levels) {
  if (levels < 3) throw std::invalid_argument("convergence_study: need at least three levels");
  if (base.forcing != ForcingKind::manufactured) {
    throw std::invalid_argument("convergence_study: requires forcing = manufactured");
  }
  return refinement_study(base, levels);
}

}  // namespace zk
