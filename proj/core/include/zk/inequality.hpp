#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "zk/types.hpp"

namespace zk {

/// v(x) = sum_p c_p sin(p pi x / L), p = 1..band.
struct SinePolynomial1D {
  double L = 1.0;
  std::vector<double> coeffs;

  int band() const { return static_cast<int>(coeffs.size()); }
  double value(double x) const;
  double derivative(double x) const;
};

/// u(x, y) = sum_{p,q} c_{pq} sin(p pi x / L) sin(q pi y / B), p, q = 1..band.
/// Vanishes on the whole boundary by construction.
struct SinePolynomial2D {
  double L = 1.0;
  double B = 1.0;
  int band = 0;
  std::vector<double> coeffs;  ///< c_{pq} at (p-1) * band + (q-1)

  double coeff(int p, int q) const { return coeffs[static_cast<std::size_t>(p - 1) * band + (q - 1)]; }
  /// {u, u_x, u_y, u_xy} at (x, y).
  std::array<double, 4> jet(double x, double y) const;
};

/// Norms of a sample by midpoint quadrature with 4*band+1 nodes per axis,
/// which integrates every product of up to eight factors exactly.
struct SampleNorms {
  double l2 = 0;    ///< ||u||^2
  double ux2 = 0;
  double uy2 = 0;
  double uxy2 = 0;
  double l4_4 = 0;  ///< ||u||_{L4}^4
  double l8_8 = 0;  ///< ||u||_{L8}^8
  double sup2 = 0;  ///< max u^2 over an oversampled grid
};
SampleNorms sample_norms(const SinePolynomial2D& u);

/// Seeded generator of random Dirichlet sine polynomials normalised to ||u|| = 1.
/// Sample i depends only on (seed, i).
class TestFunctionFamily {
 public:
  TestFunctionFamily(double L, double B, int band, std::uint64_t seed);

  SinePolynomial2D sample(std::uint64_t index) const;
  SinePolynomial1D sample_1d(std::uint64_t index) const;

  int band() const { return band_; }

 private:
  double L_, B_;
  int band_;
  std::uint64_t seed_;
};

enum class LebesgueExponent { L4, L8 };

/// RHS - LHS of ||u||_{L4} <= 2^{1/2} ||grad u||^{1/2} ||u||^{1/2}
/// or ||u||_{L8} <= 4^{3/4} ||grad u||^{3/4} ||u||^{1/4}.
double check_ladyzhenskaya(const SinePolynomial2D& u, LebesgueExponent which);
/// ||v_x||^2 - (pi / L)^2 ||v||^2.
double check_steklov(const SinePolynomial1D& v);
/// 2 (||u||^2 + ||u_x||^2 + ||u_y||^2 + ||u_xy||^2) - max u^2.
double check_sup_bound(const SinePolynomial2D& u);

/// Ratio ||u||_{Lq} / (||u||_{H1}^theta ||u||^{1-theta}), theta = 1 - 2/q, for
/// u = 1 + cos(pi x / L) cos(pi y / B), which does not vanish on the boundary.
/// Observation only: the constant of the inequality is not specified.
double trace_probe_ratio(double L, double B, int q);

double compute_chi(const DomainSpec& domain);

/// m as a function of s = ||Delta u0x|| + ||u0^2 u0x|| (+infinity for s = 0).
double smallness_bound(const DomainSpec& domain, double s);

struct ThresholdReport {
  double chi = 0;
  double m = 0;
  double u0_norm = 0;
  double delta_u0x = 0;     ///< ||Delta u0x||
  double cubic_u0 = 0;      ///< ||u0^2 u0x||
  double ut0_surrogate = 0; ///< delta_u0x + cubic_u0
  double C0 = 0;            ///< ((1+x), (Delta u0x + u0^2 u0x)^2)
  double C0_bound = 0;      ///< (1+L) ut0_surrogate^2
  double Cs = 0;            ///< 2(||u0||^2 + ||u0x||^2 + ||u0y||^2 + ||u0xy||^2)
  bool admissible = false;  ///< u0_norm < min(1/2, m)

  bool operator==(const ThresholdReport&) const = default;
};

/// Analytic data use exact derivatives and composite Gauss-Legendre
/// quadrature; tabulated data are projected on the solver grid and use the
/// solver's x-operators.
ThresholdReport compute_threshold_m(const InitialData& u0, const DomainSpec& domain, const GridSpec& grid = {});

}  // namespace zk
