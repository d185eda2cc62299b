#include "zk/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "zk/sine_basis.hpp"
#include "zk/x_operators.hpp"

namespace zk {

namespace {

using std::numbers::pi;

// Midpoint nodes on (0, a).
Eigen::VectorXd midpoints(int n, double a) {
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = (i + 0.5) * a / n;
  return x;
}

// S(p-1, i) = sin(p pi x_i / a) and C(p-1, i) = (p pi / a) cos(p pi x_i / a).
void sine_tables(int band, const Eigen::VectorXd& x, double a, Eigen::MatrixXd& S, Eigen::MatrixXd& C) {
  S.resize(band, x.size());
  C.resize(band, x.size());
  for (int p = 1; p <= band; ++p) {
    const double k = p * pi / a;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      S(p - 1, i) = std::sin(k * x[i]);
      C(p - 1, i) = k * std::cos(k * x[i]);
    }
  }
}

// Composite Gauss-Legendre rule with the given number of panels on (a, b).
struct Rule {
  std::vector<double> x, w;
};

Rule gauss_rule(int panels, double a, double b) {
  using G = boost::math::quadrature::gauss<double, 20>;
  const auto& abscissa = G::abscissa();
  const auto& weights = G::weights();
  Rule r;
  const double width = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      r.x.push_back(mid + half * abscissa[i]);
      r.w.push_back(half * weights[i]);
      if (abscissa[i] != 0.0) {
        r.x.push_back(mid - half * abscissa[i]);
        r.w.push_back(half * weights[i]);
      }
    }
  }
  return r;
}

ThresholdReport finish(ThresholdReport r, const DomainSpec& domain) {
  r.chi = compute_chi(domain);
  r.ut0_surrogate = r.delta_u0x + r.cubic_u0;
  r.m = smallness_bound(domain, r.ut0_surrogate);
  r.C0_bound = (1.0 + domain.L) * r.ut0_surrogate * r.ut0_surrogate;
  r.admissible = r.u0_norm < std::min(0.5, r.m);
  return r;
}

ThresholdReport threshold_analytic(const InitialData& u0, const DomainSpec& domain) {
  int kmax = 1;
  for (const auto& t : u0.terms()) kmax = std::max({kmax, t.kx, t.ky});
  const int panels = 4 + 2 * kmax;
  const Rule rx = gauss_rule(panels, 0.0, domain.L);
  const Rule ry = gauss_rule(panels, 0.0, domain.B);

  double l2 = 0, ux2 = 0, uy2 = 0, uxy2 = 0, lap = 0, cubic = 0, c0 = 0;
  for (std::size_t i = 0; i < rx.x.size(); ++i) {
    for (std::size_t k = 0; k < ry.x.size(); ++k) {
      const double w = rx.w[i] * ry.w[k];
      const Jet j = u0.jet(rx.x[i], ry.x[k], domain);
      const double d = j.uxxx + j.uxyy;
      const double c = j.u * j.u * j.ux;
      l2 += w * j.u * j.u;
      ux2 += w * j.ux * j.ux;
      uy2 += w * j.uy * j.uy;
      uxy2 += w * j.uxy * j.uxy;
      lap += w * d * d;
      cubic += w * c * c;
      c0 += w * (1.0 + rx.x[i]) * (d + c) * (d + c);
    }
  }
  ThresholdReport r;
  r.u0_norm = std::sqrt(l2);
  r.delta_u0x = std::sqrt(lap);
  r.cubic_u0 = std::sqrt(cubic);
  r.C0 = c0;
  r.Cs = 2.0 * (l2 + ux2 + uy2 + uxy2);
  return finish(r, domain);
}

ThresholdReport threshold_tabulated(const InitialData& u0, const DomainSpec& domain, const GridSpec& grid) {
  const int M = grid.M;
  const double h = domain.L / M;
  const SineBasis basis(grid.N, grid.K, domain.B);
  Eigen::MatrixXd values(grid.K, M + 1);
  for (int i = 0; i <= M; ++i) {
    for (int k = 0; k < grid.K; ++k) values(k, i) = u0.value(i * h, basis.nodes()[k], domain);
  }
  Eigen::MatrixXd g = basis.analyze(values);
  g.col(0).setZero();
  g.col(M).setZero();

  Eigen::MatrixXd gx(grid.N, M + 1), gxxx(grid.N, M + 1);
  std::vector<double> row(M + 1), d(M + 1);
  for (int j = 0; j < grid.N; ++j) {
    for (int i = 0; i <= M; ++i) row[i] = g(j, i);
    first_derivative(row, h, d);
    for (int i = 0; i <= M; ++i) gx(j, i) = d[i];
    third_derivative(row, h, d);
    for (int i = 0; i <= M; ++i) gxxx(j, i) = d[i];
  }
  Eigen::MatrixXd lap = gxxx;
  for (int j = 1; j <= grid.N; ++j) lap.row(j - 1) -= basis.lambda(j) * gx.row(j - 1);

  const Eigen::MatrixXd u = basis.synthesize(g);
  const Eigen::MatrixXd cubic = (u.array().square() * basis.synthesize(gx).array()).matrix();
  const Eigen::MatrixXd sum = basis.synthesize(lap) + cubic;

  Eigen::VectorXd trap(M + 1), wtrap(M + 1);
  for (int i = 0; i <= M; ++i) {
    trap[i] = (i == 0 || i == M) ? 0.5 * h : h;
    wtrap[i] = trap[i] * (1.0 + i * h);
  }
  Eigen::VectorXd lambda(grid.N);
  for (int j = 1; j <= grid.N; ++j) lambda[j - 1] = basis.lambda(j);
  auto modal = [&](const Eigen::MatrixXd& a, int power) {
    const Eigen::VectorXd per = a.array().square().matrix() * trap;
    return (per.array() * lambda.array().pow(power)).sum();
  };
  auto nodal = [&](const Eigen::MatrixXd& f, const Eigen::VectorXd& wx) {
    return (f.array().square().colwise().sum().matrix() * wx)(0) * basis.weight();
  };

  ThresholdReport r;
  const double l2 = modal(g, 0);
  r.u0_norm = std::sqrt(l2);
  r.delta_u0x = std::sqrt(modal(lap, 0));
  r.cubic_u0 = std::sqrt(nodal(cubic, trap));
  r.C0 = nodal(sum, wtrap);
  r.Cs = 2.0 * (l2 + modal(gx, 0) + modal(g, 1) + modal(gx, 1));
  return finish(r, domain);
}

}  // namespace

double SinePolynomial1D::value(double x) const {
  double s = 0.0;
  for (int p = 1; p <= band(); ++p) s += coeffs[p - 1] * std::sin(p * pi * x / L);
  return s;
}

double SinePolynomial1D::derivative(double x) const {
  double s = 0.0;
  for (int p = 1; p <= band(); ++p) s += coeffs[p - 1] * (p * pi / L) * std::cos(p * pi * x / L);
  return s;
}

std::array<double, 4> SinePolynomial2D::jet(double x, double y) const {
  std::array<double, 4> out{};
  for (int p = 1; p <= band; ++p) {
    const double kx = p * pi / L;
    const double sx = std::sin(kx * x), cx = kx * std::cos(kx * x);
    for (int q = 1; q <= band; ++q) {
      const double ky = q * pi / B;
      const double sy = std::sin(ky * y), cy = ky * std::cos(ky * y);
      const double c = coeff(p, q);
      out[0] += c * sx * sy;
      out[1] += c * cx * sy;
      out[2] += c * sx * cy;
      out[3] += c * cx * cy;
    }
  }
  return out;
}

SampleNorms sample_norms(const SinePolynomial2D& u) {
  SampleNorms n;
  if (u.band < 1) return n;
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> c(
      u.coeffs.data(), u.band, u.band);

  const int Q = 4 * u.band + 1;
  Eigen::MatrixXd Sx, Cx, Sy, Cy;
  sine_tables(u.band, midpoints(Q, u.L), u.L, Sx, Cx);
  sine_tables(u.band, midpoints(Q, u.B), u.B, Sy, Cy);
  // Field values on the Q x Q midpoint grid: F(i, k) = sum_pq c_pq X_p(x_i) Y_q(y_k).
  const Eigen::MatrixXd U = Sx.transpose() * c * Sy;
  const Eigen::MatrixXd Ux = Cx.transpose() * c * Sy;
  const Eigen::MatrixXd Uy = Sx.transpose() * c * Cy;
  const Eigen::MatrixXd Uxy = Cx.transpose() * c * Cy;
  const double w = (u.L / Q) * (u.B / Q);
  n.l2 = w * U.squaredNorm();
  n.ux2 = w * Ux.squaredNorm();
  n.uy2 = w * Uy.squaredNorm();
  n.uxy2 = w * Uxy.squaredNorm();
  n.l4_4 = w * U.array().pow(4).sum();
  n.l8_8 = w * U.array().pow(8).sum();

  const int G = 16 * u.band;
  Eigen::VectorXd xs(G + 1), ys(G + 1);
  for (int i = 0; i <= G; ++i) {
    xs[i] = i * u.L / G;
    ys[i] = i * u.B / G;
  }
  Eigen::MatrixXd Gx, Gy, unused;
  sine_tables(u.band, xs, u.L, Gx, unused);
  sine_tables(u.band, ys, u.B, Gy, unused);
  n.sup2 = (Gx.transpose() * c * Gy).array().square().maxCoeff();
  return n;
}

TestFunctionFamily::TestFunctionFamily(double L, double B, int band, std::uint64_t seed)
    : L_(L), B_(B), band_(band), seed_(seed) {
  if (!(L > 0.0) || !(B > 0.0)) throw std::invalid_argument("TestFunctionFamily: L and B must be positive");
  if (band < 1) throw std::invalid_argument("TestFunctionFamily: band must be >= 1");
}

namespace {

std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t index, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), stream};
  return std::mt19937_64(seq);
}

}  // namespace

SinePolynomial2D TestFunctionFamily::sample(std::uint64_t index) const {
  auto rng = sample_engine(seed_, index, 2);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double decay = 2.0 * unit(rng);
  const bool sparse = unit(rng) < 0.25;

  SinePolynomial2D u{L_, B_, band_, std::vector<double>(static_cast<std::size_t>(band_) * band_)};
  double sum2 = 0.0;
  for (int p = 1; p <= band_; ++p) {
    for (int q = 1; q <= band_; ++q) {
      double c = normal(rng) / std::pow(static_cast<double>(p * p + q * q), 0.5 * decay);
      if (sparse && unit(rng) < 0.5) c = 0.0;
      u.coeffs[static_cast<std::size_t>(p - 1) * band_ + (q - 1)] = c;
      sum2 += c * c;
    }
  }
  if (sum2 == 0.0) {
    u.coeffs[0] = 1.0;
    sum2 = 1.0;
  }
  const double scale = 1.0 / std::sqrt(0.25 * L_ * B_ * sum2);
  for (double& c : u.coeffs) c *= scale;
  return u;
}

SinePolynomial1D TestFunctionFamily::sample_1d(std::uint64_t index) const {
  auto rng = sample_engine(seed_, index, 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double decay = 2.0 * unit(rng);
  SinePolynomial1D v{L_, std::vector<double>(band_)};
  double sum2 = 0.0;
  for (int p = 1; p <= band_; ++p) {
    v.coeffs[p - 1] = normal(rng) / std::pow(static_cast<double>(p), decay);
    sum2 += v.coeffs[p - 1] * v.coeffs[p - 1];
  }
  if (sum2 == 0.0) {
    v.coeffs[0] = 1.0;
    sum2 = 1.0;
  }
  const double scale = 1.0 / std::sqrt(0.5 * L_ * sum2);
  for (double& c : v.coeffs) c *= scale;
  return v;
}

double check_ladyzhenskaya(const SinePolynomial2D& u, LebesgueExponent which) {
  const SampleNorms n = sample_norms(u);
  const double norm = std::sqrt(n.l2);
  const double grad = std::sqrt(n.ux2 + n.uy2);
  if (which == LebesgueExponent::L4) {
    return std::sqrt(2.0) * std::sqrt(grad) * std::sqrt(norm) - std::pow(n.l4_4, 0.25);
  }
  return std::pow(4.0, 0.75) * std::pow(grad, 0.75) * std::pow(norm, 0.25) - std::pow(n.l8_8, 0.125);
}

double check_steklov(const SinePolynomial1D& v) {
  if (v.band() == 0) return 0.0;
  const int Q = 2 * v.band() + 1;
  double vv = 0.0, dd = 0.0;
  for (int i = 0; i < Q; ++i) {
    const double x = (i + 0.5) * v.L / Q;
    const double a = v.value(x);
    const double b = v.derivative(x);
    vv += a * a;
    dd += b * b;
  }
  const double w = v.L / Q;
  return w * dd - (pi * pi / (v.L * v.L)) * w * vv;
}

double check_sup_bound(const SinePolynomial2D& u) {
  const SampleNorms n = sample_norms(u);
  return 2.0 * (n.l2 + n.ux2 + n.uy2 + n.uxy2) - n.sup2;
}

double trace_probe_ratio(double L, double B, int q) {
  if (q < 2) throw std::invalid_argument("trace_probe_ratio: q must be >= 2");
  const Rule rx = gauss_rule(8, 0.0, L);
  const Rule ry = gauss_rule(8, 0.0, B);
  double lq = 0, l2 = 0, grad = 0;
  for (std::size_t i = 0; i < rx.x.size(); ++i) {
    for (std::size_t k = 0; k < ry.x.size(); ++k) {
      const double w = rx.w[i] * ry.w[k];
      const double cx = std::cos(pi * rx.x[i] / L), sx = std::sin(pi * rx.x[i] / L);
      const double cy = std::cos(pi * ry.x[k] / B), sy = std::sin(pi * ry.x[k] / B);
      const double u = 1.0 + cx * cy;
      const double ux = -(pi / L) * sx * cy;
      const double uy = -(pi / B) * cx * sy;
      lq += w * std::pow(std::abs(u), q);
      l2 += w * u * u;
      grad += w * (ux * ux + uy * uy);
    }
  }
  const double theta = 1.0 - 2.0 / q;
  const double h1 = std::sqrt(l2 + grad);
  return std::pow(lq, 1.0 / q) / (std::pow(h1, theta) * std::pow(std::sqrt(l2), 1.0 - theta));
}

double compute_chi(const DomainSpec& domain) {
  domain.validate();
  const double L = domain.L, B = domain.B;
  return pi * pi / (2.0 * (1.0 + L)) * (5.0 / (L * L) + 1.0 / (B * B));
}

double smallness_bound(const DomainSpec& domain, double s) {
  domain.validate();
  if (!(s >= 0.0)) throw std::invalid_argument("smallness_bound: surrogate must be non-negative");
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  const double L = domain.L, B = domain.B;
  const double a = 1.0 + L;
  const double num = pi * pi / (4.0 * a * a) * (1.0 / (L * L) + 1.0 / (B * B));
  const double den = 5.0 * 128.0 * a * s * (1.0 + 25.0 * 32768.0 * std::pow(a, 6) * s);
  return std::cbrt(num / den);
}

ThresholdReport compute_threshold_m(const InitialData& u0, const DomainSpec& domain, const GridSpec& grid) {
  domain.validate();
  if (u0.is_analytic()) return threshold_analytic(u0, domain);
  grid.validate();
  return threshold_tabulated(u0, domain, grid);
}

}  // namespace zk
