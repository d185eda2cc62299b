#pragma once

#include <span>
#include <vector>

namespace zk {

/// Square band matrix with kl sub- and ku super-diagonals, stored in the
/// LAPACK general-band layout (column-major, with kl spare rows for the
/// fill-in produced by partial pivoting).
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(int n, int kl, int ku);

  int size() const { return n_; }
  int lower() const { return kl_; }
  int upper() const { return ku_; }

  bool in_band(int i, int j) const { return j - i <= ku_ && i - j <= kl_; }
  /// Entry (i, j); must lie inside the band.
  double& at(int i, int j);
  double operator()(int i, int j) const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;

  /// alpha * I + a * A + b * B (band widths are the union of the operands').
  static BandedMatrix combine(double alpha, double a, const BandedMatrix& A, double b, const BandedMatrix& B);

 private:
  friend class BandedLU;
  int ldab() const { return 2 * kl_ + ku_ + 1; }

  int n_ = 0;
  int kl_ = 0;
  int ku_ = 0;
  std::vector<double> ab_;
};

/// LU factorisation with partial pivoting (LAPACK dgbtrf/dgbtrs).
class BandedLU {
 public:
  BandedLU() = default;
  explicit BandedLU(BandedMatrix matrix);

  int size() const { return factors_.n_; }
  /// Overwrites rhs with the solution of A x = rhs.
  void solve(std::span<double> rhs) const;

 private:
  BandedMatrix factors_;
  std::vector<int> pivots_;
};

}  // namespace zk
