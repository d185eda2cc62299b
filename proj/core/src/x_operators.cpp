#include "zk/x_operators.hpp"

#include <array>
#include <stdexcept>

namespace zk {

namespace {

// Stencil offsets (relative to the node) used at full-grid node i.
std::array<double, 5> third_offsets(int i, int M) {
  if (i == 0) return {0, 1, 2, 3, 4};
  if (i == 1) return {-1, 0, 1, 2, 3};
  if (i == M - 1) return {-3, -2, -1, 0, 1};
  if (i == M) return {-4, -3, -2, -1, 0};
  return {-2, -1, 0, 1, 2};
}

std::array<double, 3> first_offsets(int i, int M) {
  if (i == 0) return {0, 1, 2};
  if (i == M) return {-2, -1, 0};
  return {-1, 0, 1};
}

struct StencilTable {
  explicit StencilTable(int M) {
    for (int i : {0, 1, 2, M - 1, M}) {
      const auto o = third_offsets(i, M);
      third[slot(i, M)] = fd_weights(o, 3);
    }
    for (int i : {0, 1, M}) {
      const auto o = first_offsets(i, M);
      first[slot1(i, M)] = fd_weights(o, 1);
    }
  }
  static int slot(int i, int M) { return i == 0 ? 0 : i == 1 ? 1 : i == M - 1 ? 3 : i == M ? 4 : 2; }
  static int slot1(int i, int M) { return i == 0 ? 0 : i == M ? 2 : 1; }
  std::array<std::vector<double>, 5> third;
  std::array<std::vector<double>, 3> first;
};

}  // namespace

std::vector<double> fd_weights(std::span<const double> offsets, int derivative) {
  const int n = static_cast<int>(offsets.size());
  if (derivative < 0 || derivative >= n) throw std::invalid_argument("fd_weights: stencil too small");
  // c[k][j]: weight of node j for the k-th derivative at 0.
  std::vector<std::vector<double>> c(derivative + 1, std::vector<double>(n, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i < n; ++i) {
    double c2 = 1.0;
    const int mn = std::min(i, derivative);
    for (int j = 0; j < i; ++j) {
      const double c3 = offsets[i] - offsets[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - offsets[i - 1] * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * offsets[i - 1] * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (offsets[i] * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = offsets[i] * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c[derivative];
}

double trapezoid(std::span<const double> f, double h) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * h;
}

void first_derivative(std::span<const double> f, double h, std::span<double> out) {
  const int M = static_cast<int>(f.size()) - 1;
  if (M < 2) throw std::invalid_argument("first_derivative: need at least three nodes");
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (int i = 1; i < M; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  out[M] = (3.0 * f[M] - 4.0 * f[M - 1] + f[M - 2]) / (2.0 * h);
}

void third_derivative(std::span<const double> f, double h, std::span<double> out) {
  const int M = static_cast<int>(f.size()) - 1;
  if (M < 8) throw std::invalid_argument("third_derivative: need M >= 8");
  static thread_local int cached_M = -1;
  static thread_local std::array<std::vector<double>, 5> w;
  if (cached_M != M) {
    StencilTable t(M);
    w = t.third;
    cached_M = M;
  }
  const double scale = 1.0 / (h * h * h);
  for (int i = 0; i <= M; ++i) {
    const auto o = third_offsets(i, M);
    const auto& c = w[StencilTable::slot(i, M)];
    double s = 0.0;
    for (int a = 0; a < 5; ++a) s += c[a] * f[i + static_cast<int>(o[a])];
    out[i] = s * scale;
  }
}

void XOperators::expand(std::span<const double> interior, std::span<double> full) const {
  const int n = unknowns();
  full[0] = 0.0;
  for (int r = 0; r < n; ++r) full[r + 1] = interior[r];
  full[M - 1] = kClosureRatio * interior[n - 1];
  full[M] = 0.0;
}

void XOperators::restrict(std::span<const double> full, std::span<double> interior) const {
  for (int r = 0; r < unknowns(); ++r) interior[r] = full[r + 1];
}

XOperators build_x_operators(const GridSpec& grid, const DomainSpec& domain) {
  if (grid.M < 8) throw std::invalid_argument("build_x_operators: M must be >= 8 for the five-point stencils");
  domain.validate();
  XOperators ops;
  ops.M = grid.M;
  ops.h = domain.L / grid.M;
  const int M = grid.M;
  const int n = ops.unknowns();
  ops.d1 = BandedMatrix(n, 1, 1);
  ops.d3 = BandedMatrix(n, 2, 3);

  const StencilTable table(M);
  const double s1 = 1.0 / ops.h;
  const double s3 = 1.0 / (ops.h * ops.h * ops.h);

  // Scatter a node weight onto the unknown(s) it depends on.
  auto add = [&](BandedMatrix& A, int row, int node, double w) {
    if (node <= 0 || node >= M) return;
    if (node == M - 1) {
      A.at(row, n - 1) += XOperators::kClosureRatio * w;
      return;
    }
    A.at(row, node - 1) += w;
  };

  for (int r = 0; r < n; ++r) {
    const int i = r + 1;
    const auto o3 = third_offsets(i, M);
    const auto& c3 = table.third[StencilTable::slot(i, M)];
    for (int a = 0; a < 5; ++a) add(ops.d3, r, i + static_cast<int>(o3[a]), c3[a] * s3);
    add(ops.d1, r, i - 1, -0.5 * s1);
    add(ops.d1, r, i + 1, 0.5 * s1);
  }
  return ops;
}

}  // namespace zk
