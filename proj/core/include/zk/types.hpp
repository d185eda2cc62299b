#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace zk {

/// The rectangle D = (0, L) x (0, B).
struct DomainSpec {
  double L = 1.0;
  double B = 1.0;

  /// Throws std::invalid_argument unless 0 < L, B < inf.
  void validate() const;

  bool operator==(const DomainSpec&) const = default;
};

/// Discretisation parameters.
///
/// N sine modes in y, M uniform intervals in x (nodes x_i = i*L/M, i = 0..M),
/// K midpoint quadrature nodes in y, time step dt and final time T.
struct GridSpec {
  int N = 16;
  int M = 256;
  int K = 33;
  double dt = 1e-3;
  double T = 5.0;

  /// Smallest K for which every quartic product of band-N sine series is
  /// integrated exactly by the midpoint rule.
  static constexpr int min_points(int modes) { return 2 * modes + 1; }

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;

  double spacing(const DomainSpec& domain) const { return domain.L / M; }
  std::int64_t steps() const;

  bool operator==(const GridSpec&) const = default;
};

/// x-profiles available to separable analytic data.
enum class XProfile {
  cubic_bump,  ///< x (L - x)^2: vanishes at both ends, double root at x = L
  sine,        ///< sin(k pi x / L)
};

/// amplitude * profile(x) * sin(ky pi y / B).
struct SeparableTerm {
  double amplitude = 0.0;
  XProfile profile = XProfile::cubic_bump;
  int kx = 1;  ///< only used by XProfile::sine
  int ky = 1;

  bool operator==(const SeparableTerm&) const = default;
};

/// Point values of u0 and the partial derivatives used by the diagnostics.
struct Jet {
  double u = 0, ux = 0, uy = 0, uxy = 0, uxxx = 0, uxyy = 0;
};

/// Samples on the uniform (nx+1) x (ny+1) tensor grid covering the closed
/// rectangle, stored x-major: values[i * (ny + 1) + k] = u0(x_i, y_k).
struct TabulatedField {
  int nx = 0;
  int ny = 0;
  std::vector<double> values;
};

/// Initial datum u0: a finite sum of separable analytic terms, or a table
/// interpolated by piecewise cubics.
class InitialData {
 public:
  InitialData() = default;

  static InitialData analytic(std::vector<SeparableTerm> terms);
  static InitialData tabulated(TabulatedField field);

  bool is_analytic() const { return std::holds_alternative<std::vector<SeparableTerm>>(data_); }
  const std::vector<SeparableTerm>& terms() const;
  const TabulatedField& table() const;

  double value(double x, double y, const DomainSpec& domain) const;
  /// Exact derivatives; analytic data only.
  Jet jet(double x, double y, const DomainSpec& domain) const;

  /// Sum of two analytic data.
  InitialData operator+(const InitialData& other) const;
  InitialData scaled(double c) const;

  /// Default tolerance of validate_compatibility for this representation.
  double compatibility_tolerance() const { return is_analytic() ? 1e-12 : 1e-6; }

 private:
  std::variant<std::vector<SeparableTerm>, TabulatedField> data_{std::vector<SeparableTerm>{}};
};

/// u0 = A x (L - x)^2 sin(j pi y / B).
InitialData make_canonical_u0(const DomainSpec& domain, double A, int j);

struct BoundaryOffender {
  std::string where;  ///< "x=0", "x=L", "y=0", "y=B" or "u_x(L)"
  double x = 0, y = 0;
  double value = 0;
};

struct CompatibilityReport {
  bool ok = true;
  double sup_u0 = 0;      ///< grid estimate of ||u0||_inf
  double max_trace = 0;   ///< max |u0| over the four edges
  double max_dx_at_L = 0; ///< max |d_x u0(L, y)|
  double tolerance = 0;
  std::vector<BoundaryOffender> worst;  ///< largest offenders first
};

/// Checks u0 = 0 on the boundary and d_x u0(L, .) = 0 relative to ||u0||_inf.
/// Analytic data use exact derivatives; tabulated data a four-point one-sided
/// difference on the table spacing. tol defaults to compatibility_tolerance().
CompatibilityReport validate_compatibility(const InitialData& u0, const DomainSpec& domain,
                                           const GridSpec& grid,
                                           std::optional<double> tol = std::nullopt);

/// w = A e^{-t} x (L - x)^2 sin(j pi y / B) and the forcing that makes it an
/// exact solution of u_t + u^2 u_x + u_xxx + u_xyy = f.
struct ManufacturedSolution {
  double amplitude = 1.0;
  int j = 1;

  double value(double x, double y, double t, const DomainSpec& domain) const;
  double time_derivative(double x, double y, double t, const DomainSpec& domain) const;
  double forcing(double x, double y, double t, const DomainSpec& domain) const;
};

enum class TimeScheme {
  sbdf2,   ///< BDF2 implicit linear part, extrapolated nonlinear term
  cn_ab2,  ///< Crank-Nicolson linear part, Adams-Bashforth 2 nonlinear term
};

enum class ForcingKind { none, manufactured };

/// How u0 was described in the configuration (kept for round-tripping).
struct InitialDataSpec {
  std::string family = "canonical";  ///< canonical | sine | zero | tabulated
  double A = 0.0;
  int j = 1;
  std::filesystem::path file;  ///< tabulated only

  bool operator==(const InitialDataSpec&) const = default;
};

struct RunConfig {
  DomainSpec domain;
  GridSpec grid;
  InitialDataSpec u0;
  ForcingKind forcing = ForcingKind::none;
  TimeScheme scheme = TimeScheme::sbdf2;
  int cadence = 1;
  std::filesystem::path out_dir = "out";

  /// Throws std::invalid_argument on an invariant violation.
  void validate() const;
  InitialData initial_data() const;
  std::optional<ManufacturedSolution> manufactured() const;

  bool operator==(const RunConfig&) const = default;
};

std::string to_string(TimeScheme scheme);
std::string to_string(ForcingKind forcing);

}  // namespace zk
