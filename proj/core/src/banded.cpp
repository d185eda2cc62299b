#include "zk/banded.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

extern "C" {
void dgbtrf_(const int* m, const int* n, const int* kl, const int* ku, double* ab, const int* ldab, int* ipiv,
             int* info);
void dgbtrs_(const char* trans, const int* n, const int* kl, const int* ku, const int* nrhs, const double* ab,
             const int* ldab, const int* ipiv, double* b, const int* ldb, int* info);
}

namespace zk {

BandedMatrix::BandedMatrix(int n, int kl, int ku) : n_(n), kl_(kl), ku_(ku) {
  if (n < 1 || kl < 0 || ku < 0) throw std::invalid_argument("invalid band matrix shape");
  ab_.assign(static_cast<std::size_t>(ldab()) * n, 0.0);
}

double& BandedMatrix::at(int i, int j) {
  if (!in_band(i, j) || i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw std::out_of_range("band entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside band");
  }
  return ab_[static_cast<std::size_t>(j) * ldab() + (kl_ + ku_ + i - j)];
}

double BandedMatrix::operator()(int i, int j) const {
  if (!in_band(i, j)) return 0.0;
  return ab_[static_cast<std::size_t>(j) * ldab() + (kl_ + ku_ + i - j)];
}

void BandedMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (int i = 0; i < n_; ++i) {
    const int j0 = std::max(0, i - kl_);
    const int j1 = std::min(n_ - 1, i + ku_);
    double s = 0.0;
    for (int j = j0; j <= j1; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
}

BandedMatrix BandedMatrix::combine(double alpha, double a, const BandedMatrix& A, double b, const BandedMatrix& B) {
  if (A.n_ != B.n_) throw std::invalid_argument("band matrices differ in size");
  BandedMatrix C(A.n_, std::max(A.kl_, B.kl_), std::max(A.ku_, B.ku_));
  for (int j = 0; j < C.n_; ++j) {
    for (int i = std::max(0, j - C.ku_); i <= std::min(C.n_ - 1, j + C.kl_); ++i) {
      C.at(i, j) = a * A(i, j) + b * B(i, j) + (i == j ? alpha : 0.0);
    }
  }
  return C;
}

BandedLU::BandedLU(BandedMatrix matrix) : factors_(std::move(matrix)) {
  const int n = factors_.n_;
  const int ld = factors_.ldab();
  pivots_.assign(n, 0);
  int info = 0;
  dgbtrf_(&n, &n, &factors_.kl_, &factors_.ku_, factors_.ab_.data(), &ld, pivots_.data(), &info);
  if (info != 0) throw std::runtime_error("banded LU factorisation failed (info=" + std::to_string(info) + ")");
}

void BandedLU::solve(std::span<double> rhs) const {
  const int n = factors_.n_;
  if (static_cast<int>(rhs.size()) != n) throw std::invalid_argument("rhs size mismatch");
  const int ld = factors_.ldab();
  const int nrhs = 1;
  const char trans = 'N';
  int info = 0;
  dgbtrs_(&trans, &n, &factors_.kl_, &factors_.ku_, &nrhs, factors_.ab_.data(), &ld, pivots_.data(), rhs.data(), &n,
          &info);
  if (info != 0) throw std::runtime_error("banded solve failed (info=" + std::to_string(info) + ")");
}

}  // namespace zk
