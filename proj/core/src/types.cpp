#include "zk/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zk/io.hpp"

namespace zk {

namespace {

using std::numbers::pi;

// Profile p(x) and its first three derivatives.
struct ProfileJet {
  double p, p1, p2, p3;
};

ProfileJet profile_jet(const SeparableTerm& term, double x, double L) {
  switch (term.profile) {
    case XProfile::cubic_bump: {
      const double r = L - x;
      return {x * r * r, r * (L - 3.0 * x), -4.0 * L + 6.0 * x, 6.0};
    }
    case XProfile::sine: {
      const double k = term.kx * pi / L;
      const double s = std::sin(k * x);
      const double c = std::cos(k * x);
      return {s, k * c, -k * k * s, -k * k * k * c};
    }
  }
  return {0, 0, 0, 0};
}

// Four-point Lagrange weights on the nodes start..start+3 at fractional position s.
void cubic_weights(double s, int start, double w[4]) {
  const double n[4] = {static_cast<double>(start), start + 1.0, start + 2.0, start + 3.0};
  for (int a = 0; a < 4; ++a) {
    double v = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (b != a) v *= (s - n[b]) / (n[a] - n[b]);
    }
    w[a] = v;
  }
}

int stencil_start(double s, int n) {
  // Nodes 0..n; pick the four nodes surrounding s, clamped to the table.
  const int base = static_cast<int>(std::floor(s)) - 1;
  return std::clamp(base, 0, std::max(0, n - 3));
}

}  // namespace

void DomainSpec::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("domain length L must be positive and finite");
  if (!(B > 0.0) || !std::isfinite(B)) throw std::invalid_argument("domain width B must be positive and finite");
}

void GridSpec::validate() const {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (M < 8) throw std::invalid_argument("M must be >= 8");
  if (K < min_points(N)) {
    throw std::invalid_argument("K must be >= 2N+1 (got K=" + std::to_string(K) + ", N=" + std::to_string(N) + ")");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive and finite");
  if (!(T >= 0.0) || !std::isfinite(T)) throw std::invalid_argument("T must be non-negative and finite");
}

std::int64_t GridSpec::steps() const { return std::llround(T / dt); }

InitialData InitialData::analytic(std::vector<SeparableTerm> terms) {
  for (const auto& t : terms) {
    if (!std::isfinite(t.amplitude)) throw std::invalid_argument("amplitude must be finite");
    if (t.ky < 1 || t.kx < 1) throw std::invalid_argument("mode indices must be >= 1");
  }
  InitialData d;
  d.data_ = std::move(terms);
  return d;
}

InitialData InitialData::tabulated(TabulatedField field) {
  if (field.nx < 3 || field.ny < 3) throw std::invalid_argument("tabulated data needs at least 4x4 samples");
  if (field.values.size() != static_cast<std::size_t>(field.nx + 1) * static_cast<std::size_t>(field.ny + 1)) {
    throw std::invalid_argument("tabulated data has the wrong number of samples");
  }
  for (double v : field.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("tabulated data must be finite");
  }
  InitialData d;
  d.data_ = std::move(field);
  return d;
}

const std::vector<SeparableTerm>& InitialData::terms() const {
  if (!is_analytic()) throw std::logic_error("initial data is tabulated");
  return std::get<std::vector<SeparableTerm>>(data_);
}

const TabulatedField& InitialData::table() const {
  if (is_analytic()) throw std::logic_error("initial data is analytic");
  return std::get<TabulatedField>(data_);
}

double InitialData::value(double x, double y, const DomainSpec& domain) const {
  if (is_analytic()) return jet(x, y, domain).u;

  const auto& f = table();
  const double sx = x / domain.L * f.nx;
  const double sy = y / domain.B * f.ny;
  const int ix = stencil_start(sx, f.nx);
  const int iy = stencil_start(sy, f.ny);
  double wx[4], wy[4];
  cubic_weights(sx, ix, wx);
  cubic_weights(sy, iy, wy);
  double v = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      v += wx[a] * wy[b] * f.values[static_cast<std::size_t>(ix + a) * (f.ny + 1) + (iy + b)];
    }
  }
  return v;
}

Jet InitialData::jet(double x, double y, const DomainSpec& domain) const {
  Jet out;
  for (const auto& term : terms()) {
    const ProfileJet p = profile_jet(term, x, domain.L);
    const double k = term.ky * pi / domain.B;
    const double s = std::sin(k * y);
    const double c = std::cos(k * y);
    const double a = term.amplitude;
    out.u += a * p.p * s;
    out.ux += a * p.p1 * s;
    out.uy += a * p.p * k * c;
    out.uxy += a * p.p1 * k * c;
    out.uxxx += a * p.p3 * s;
    out.uxyy += -a * p.p1 * k * k * s;
  }
  return out;
}

InitialData InitialData::operator+(const InitialData& other) const {
  auto combined = terms();
  const auto& rhs = other.terms();
  combined.insert(combined.end(), rhs.begin(), rhs.end());
  return analytic(std::move(combined));
}

InitialData InitialData::scaled(double c) const {
  if (is_analytic()) {
    auto t = terms();
    for (auto& term : t) term.amplitude *= c;
    return analytic(std::move(t));
  }
  auto f = table();
  for (double& v : f.values) v *= c;
  return tabulated(std::move(f));
}

InitialData make_canonical_u0(const DomainSpec& domain, double A, int j) {
  domain.validate();
  if (j < 1) throw std::invalid_argument("mode index j must be >= 1");
  if (!std::isfinite(A)) throw std::invalid_argument("amplitude A must be finite");
  return InitialData::analytic({SeparableTerm{A, XProfile::cubic_bump, 1, j}});
}

CompatibilityReport validate_compatibility(const InitialData& u0, const DomainSpec& domain,
                                           const GridSpec& grid, std::optional<double> tol) {
  CompatibilityReport report;
  report.tolerance = tol.value_or(u0.compatibility_tolerance());

  const int nx = grid.M;
  const int ny = std::max(grid.K, 2 * grid.N + 1);
  const double hx = domain.L / nx;
  const double hy = domain.B / ny;

  for (int i = 0; i <= nx; ++i) {
    for (int k = 0; k <= ny; ++k) {
      report.sup_u0 = std::max(report.sup_u0, std::abs(u0.value(i * hx, k * hy, domain)));
    }
  }

  std::vector<BoundaryOffender> all;
  auto note = [&](const char* where, double x, double y, double v) {
    all.push_back({where, x, y, v});
  };
  for (int i = 0; i <= nx; ++i) {
    const double x = i * hx;
    note("y=0", x, 0.0, u0.value(x, 0.0, domain));
    note("y=B", x, domain.B, u0.value(x, domain.B, domain));
  }
  for (int k = 0; k <= ny; ++k) {
    const double y = k * hy;
    note("x=0", 0.0, y, u0.value(0.0, y, domain));
    note("x=L", domain.L, y, u0.value(domain.L, y, domain));
  }
  for (const auto& o : all) report.max_trace = std::max(report.max_trace, std::abs(o.value));

  std::vector<BoundaryOffender> slopes;
  for (int k = 0; k <= ny; ++k) {
    const double y = k * hy;
    double d;
    if (u0.is_analytic()) {
      d = u0.jet(domain.L, y, domain).ux;
    } else {
      const double h = domain.L / u0.table().nx;
      const double L = domain.L;
      d = (11.0 * u0.value(L, y, domain) - 18.0 * u0.value(L - h, y, domain) +
           9.0 * u0.value(L - 2 * h, y, domain) - 2.0 * u0.value(L - 3 * h, y, domain)) /
          (6.0 * h);
    }
    slopes.push_back({"u_x(L)", domain.L, y, d});
    report.max_dx_at_L = std::max(report.max_dx_at_L, std::abs(d));
  }
  all.insert(all.end(), slopes.begin(), slopes.end());

  const double limit = report.tolerance * report.sup_u0;
  report.ok = report.max_trace <= limit && report.max_dx_at_L <= limit;

  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return std::abs(a.value) > std::abs(b.value); });
  for (const auto& o : all) {
    if (report.worst.size() >= 5 || std::abs(o.value) <= limit) break;
    report.worst.push_back(o);
  }
  return report;
}

double ManufacturedSolution::value(double x, double y, double t, const DomainSpec& domain) const {
  const double r = domain.L - x;
  return amplitude * std::exp(-t) * x * r * r * std::sin(j * pi * y / domain.B);
}

double ManufacturedSolution::time_derivative(double x, double y, double t, const DomainSpec& domain) const {
  return -value(x, y, t, domain);
}

double ManufacturedSolution::forcing(double x, double y, double t, const DomainSpec& domain) const {
  const double L = domain.L;
  const double r = L - x;
  const double p = x * r * r;
  const double p1 = r * (L - 3.0 * x);
  const double p3 = 6.0;
  const double k = j * pi / domain.B;
  const double a = amplitude * std::exp(-t);
  const double s = std::sin(k * y);
  // w_t + w^2 w_x + w_xxx + w_xyy
  return a * s * (-p + p3 - k * k * p1) + a * a * a * p * p * p1 * s * s * s;
}

void RunConfig::validate() const {
  domain.validate();
  grid.validate();
  if (cadence < 1) throw std::invalid_argument("cadence must be >= 1");
  const auto& f = u0.family;
  if (f != "canonical" && f != "sine" && f != "zero" && f != "tabulated") {
    throw std::invalid_argument("unknown u0.family '" + f + "'");
  }
  if ((f == "canonical" || f == "sine") && !std::isfinite(u0.A)) throw std::invalid_argument("u0.A must be finite");
  if ((f == "canonical" || f == "sine") && (u0.j < 1 || u0.j > grid.N)) {
    throw std::invalid_argument("u0.j must satisfy 1 <= j <= N");
  }
  if (f == "tabulated" && u0.file.empty()) throw std::invalid_argument("u0.family = tabulated requires u0.file");
  if (forcing == ForcingKind::manufactured && f != "canonical") {
    throw std::invalid_argument("forcing = manufactured requires u0.family = canonical");
  }
}

InitialData RunConfig::initial_data() const {
  if (u0.family == "canonical") return make_canonical_u0(domain, u0.A, u0.j);
  if (u0.family == "sine") return InitialData::analytic({SeparableTerm{u0.A, XProfile::sine, 1, u0.j}});
  if (u0.family == "zero") return InitialData::analytic({});
  if (u0.family == "tabulated") return InitialData::tabulated(read_tabulated_field(u0.file));
  throw std::invalid_argument("unknown u0.family '" + u0.family + "'");
}

std::optional<ManufacturedSolution> RunConfig::manufactured() const {
  if (forcing != ForcingKind::manufactured) return std::nullopt;
  return ManufacturedSolution{u0.A, u0.j};
}

std::string to_string(TimeScheme scheme) {
  return scheme == TimeScheme::sbdf2 ? "sbdf2" : "cn-ab2";
}

std::string to_string(ForcingKind forcing) {
  return forcing == ForcingKind::none ? "none" : "manufactured";
}

}  // namespace zk
