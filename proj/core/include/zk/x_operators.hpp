#pragma once

#include <span>
#include <vector>

#include "zk/banded.hpp"
#include "zk/types.hpp"

namespace zk {

/// Finite-difference weights (unit spacing) for the given derivative order on
/// arbitrary stencil offsets, by Fornberg's recursion.
std::vector<double> fd_weights(std::span<const double> offsets, int derivative);

/// Composite trapezoid rule on a uniform grid with spacing h.
double trapezoid(std::span<const double> f, double h);

/// Second-order first derivative on nodes 0..M: centred inside, three-point
/// one-sided at both ends.
void first_derivative(std::span<const double> f, double h, std::span<double> out);

/// Second-order third derivative on nodes 0..M: five-point centred for
/// 2 <= i <= M-2, five-point biased stencils on the two nodes next to each end.
void third_derivative(std::span<const double> f, double h, std::span<double> out);

/// Discrete d/dx and d^3/dx^3 acting on the interior unknowns x_1..x_{M-2}.
///
/// The three boundary conditions are eliminated: g(0) = g(L) = 0, and
/// g_x(L) = 0 in its three-point one-sided form 3g_M - 4g_{M-1} + g_{M-2} = 0,
/// i.e. g_{M-1} = g_{M-2} / 4. Rows reproduce first_derivative and
/// third_derivative of the expanded grid function.
struct XOperators {
  int M = 0;
  double h = 0;
  BandedMatrix d1;
  BandedMatrix d3;

  static constexpr double kClosureRatio = 0.25;

  int unknowns() const { return M - 2; }
  /// Full nodal column (M+1 values) from interior unknowns, boundary conditions applied.
  void expand(std::span<const double> interior, std::span<double> full) const;
  /// Interior unknowns from a full nodal column.
  void restrict(std::span<const double> full, std::span<double> interior) const;
};

XOperators build_x_operators(const GridSpec& grid, const DomainSpec& domain);

}  // namespace zk
