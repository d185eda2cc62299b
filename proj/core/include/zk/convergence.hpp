#pragma once

#include <vector>

#include "zk/types.hpp"

namespace zk {

struct ConvergenceLevel {
  int M = 0;
  double dt = 0;
  double max_error = 0;        ///< max |u - w| at T over x-nodes and y-quadrature nodes (manufactured runs)
  double max_abs_r_l2 = 0;     ///< max_t |r_l2|
  double max_abs_r_w = 0;      ///< max_t |r_w|
  double budget_residual = 0;  ///< R(T)
  double max_abs_budget = 0;   ///< max_t |R(t)|
  double l2_0 = 0;             ///< ||u(0)||^2 of the discrete initial state
};

struct ConvergenceTable {
  std::vector<ConvergenceLevel> levels;
  /// log2(e_k / e_{k+1}) between successive levels; NaN when either value is zero.
  std::vector<double> error_orders;
  std::vector<double> r_l2_orders;
  std::vector<double> r_w_orders;
  std::vector<double> budget_orders;
  std::vector<double> max_budget_orders;
};

/// Observed order log2(|a| / |b|), NaN unless both are non-zero.
double observed_order(double a, double b);

/// Runs base at (M 2^k, dt / 2^k), k = 0..levels-1, recording the errors above.
/// Requires levels >= 2; any forcing.
ConvergenceTable refinement_study(const RunConfig& base, int levels);

/// refinement_study restricted to manufactured forcing and levels >= 3.
ConvergenceTable convergence_study(const RunConfig& base, int levels);

}  // namespace zk
