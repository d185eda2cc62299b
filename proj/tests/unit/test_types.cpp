#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "zk/types.hpp"

using namespace zk;
using boost::math::quadrature::gauss_kronrod;
using std::numbers::pi;

namespace {

double integrate2d(const auto& f, double L, double B) {
  auto inner = [&](double x) { return gauss_kronrod<double, 31>::integrate([&](double y) { return f(x, y); }, 0.0, B, 8, 1e-14); };
  return gauss_kronrod<double, 31>::integrate(inner, 0.0, L, 8, 1e-14);
}

}  // namespace

TEST(CanonicalData, ZeroAmplitudeIsIdenticallyZero) {
  const DomainSpec d{1.0, 1.0};
  const auto u0 = make_canonical_u0(d, 0.0, 1);
  for (double x : {0.1, 0.5, 0.9}) {
    for (double y : {0.2, 0.7}) EXPECT_EQ(u0.value(x, y, d), 0.0);
  }
}

TEST(CanonicalData, SquaredNormMatchesQuadrature) {
  const DomainSpec d{1.0, 1.0};
  const auto u0 = make_canonical_u0(d, 1.0, 1);
  const double norm2 = integrate2d([&](double x, double y) { return std::pow(u0.value(x, y, d), 2); }, d.L, d.B);
  EXPECT_NEAR(norm2, 1.0 / 210.0, 1e-13);
}

TEST(CanonicalData, SlopeVanishesAtOutflowEdge) {
  const DomainSpec d{2.0, 1.0};
  const auto u0 = make_canonical_u0(d, 1.0, 1);
  for (int k = 0; k <= 20; ++k) EXPECT_EQ(u0.jet(2.0, k / 20.0, d).ux, 0.0);
}

TEST(CanonicalData, LinearInAmplitude) {
  const DomainSpec d{1.5, 0.75};
  const auto a = make_canonical_u0(d, 0.3, 2);
  const auto b = make_canonical_u0(d, 0.9, 2);
  for (double x : {0.1, 0.77, 1.3}) {
    for (double y : {0.05, 0.4}) EXPECT_DOUBLE_EQ(b.value(x, y, d), 3.0 * a.value(x, y, d));
  }
}

TEST(CanonicalData, RejectsBadParameters) {
  const DomainSpec d;
  EXPECT_THROW(make_canonical_u0(d, 1.0, 0), std::invalid_argument);
  EXPECT_THROW(make_canonical_u0(d, NAN, 1), std::invalid_argument);
  EXPECT_THROW(make_canonical_u0(d, INFINITY, 1), std::invalid_argument);
}

TEST(Compatibility, CanonicalPasses) {
  const DomainSpec d{1.0, 1.0};
  const auto rep = validate_compatibility(make_canonical_u0(d, 1.0, 3), d, GridSpec{});
  EXPECT_TRUE(rep.ok);
  EXPECT_TRUE(rep.worst.empty());
}

TEST(Compatibility, SineProfileFailsAtOutflowSlope) {
  const DomainSpec d{1.0, 1.0};
  const auto u0 = InitialData::analytic({SeparableTerm{1.0, XProfile::sine, 1, 1}});
  const auto rep = validate_compatibility(u0, d, GridSpec{});
  EXPECT_FALSE(rep.ok);
  EXPECT_NEAR(rep.max_dx_at_L, pi, 1e-2);  // |d_x u0(L, y)| = pi sin(pi y) on sampled y
  ASSERT_FALSE(rep.worst.empty());
  EXPECT_EQ(rep.worst.front().where, "u_x(L)");
}

TEST(Compatibility, ZeroDatumPasses) {
  const DomainSpec d;
  EXPECT_TRUE(validate_compatibility(InitialData::analytic({}), d, GridSpec{}).ok);
}

TEST(Compatibility, TabulatedUsesLooserTolerance) {
  const DomainSpec d{1.0, 1.0};
  TabulatedField f{64, 64, {}};
  for (int i = 0; i <= 64; ++i) {
    for (int k = 0; k <= 64; ++k) {
      const double x = i / 64.0, y = k / 64.0;
      f.values.push_back(x * (1 - x) * (1 - x) * std::sin(pi * y));
    }
  }
  const auto u0 = InitialData::tabulated(f);
  EXPECT_EQ(u0.compatibility_tolerance(), 1e-6);
  const auto rep = validate_compatibility(u0, d, GridSpec{});
  EXPECT_LT(rep.max_trace, 1e-15);
  // The four-point one-sided slope of a cubic in x is exact.
  EXPECT_LT(rep.max_dx_at_L, 1e-10);
  EXPECT_TRUE(rep.ok);
}

TEST(InitialData, TabulatedInterpolationReproducesCubics) {
  const DomainSpec d{2.0, 1.0};
  TabulatedField f{10, 12, {}};
  auto g = [](double x, double y) { return x * x * x - 2 * x * y + y * y * y; };
  for (int i = 0; i <= 10; ++i) {
    for (int k = 0; k <= 12; ++k) f.values.push_back(g(i * 0.2, k / 12.0));
  }
  const auto u = InitialData::tabulated(f);
  for (double x : {0.0, 0.13, 1.01, 1.97, 2.0}) {
    for (double y : {0.0, 0.31, 0.99}) EXPECT_NEAR(u.value(x, y, d), g(x, y), 1e-12);
  }
}

TEST(InitialData, TabulatedRejectsWrongSize) {
  EXPECT_THROW(InitialData::tabulated(TabulatedField{4, 4, std::vector<double>(24, 0.0)}), std::invalid_argument);
}

TEST(GridSpec, ValidatesInvariants) {
  GridSpec g;
  EXPECT_NO_THROW(g.validate());
  g.K = 2 * g.N;
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g = GridSpec{};
  g.M = 7;
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g = GridSpec{};
  g.dt = 0;
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g = GridSpec{};
  g.T = 0;
  EXPECT_NO_THROW(g.validate());
  EXPECT_EQ(g.steps(), 0);
}

TEST(DomainSpec, RejectsNonPositive) {
  EXPECT_THROW((DomainSpec{0.0, 1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((DomainSpec{1.0, -1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((DomainSpec{INFINITY, 1.0}.validate()), std::invalid_argument);
}

TEST(ManufacturedSolution, ForcingMatchesFiniteDifferences) {
  const DomainSpec d{1.3, 0.8};
  const ManufacturedSolution w{0.7, 2};
  const double h = 1e-3, t = 0.4;
  for (double x : {0.2, 0.9}) {
    for (double y : {0.15, 0.5}) {
      auto u = [&](double xx, double yy) { return w.value(xx, yy, t, d); };
      const double ux = (u(x + h, y) - u(x - h, y)) / (2 * h);
      const double uxxx = (u(x + 2 * h, y) - 2 * u(x + h, y) + 2 * u(x - h, y) - u(x - 2 * h, y)) / (2 * h * h * h);
      const double uxyy = ((u(x + h, y + h) - 2 * u(x + h, y) + u(x + h, y - h)) -
                           (u(x - h, y + h) - 2 * u(x - h, y) + u(x - h, y - h))) /
                          (2 * h * h * h);
      const double ut = (w.value(x, y, t + h, d) - w.value(x, y, t - h, d)) / (2 * h);
      const double expected = ut + u(x, y) * u(x, y) * ux + uxxx + uxyy;
      EXPECT_NEAR(w.forcing(x, y, t, d), expected, 1e-5 * std::abs(expected) + 1e-6);
    }
  }
}

TEST(RunConfig, FamilyRules) {
  RunConfig c;
  c.u0.A = 0.01;
  EXPECT_NO_THROW(c.validate());
  c.u0.j = c.grid.N + 1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.u0.j = 1;
  c.u0.family = "bogus";
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.u0.family = "sine";
  c.forcing = ForcingKind::manufactured;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.u0.family = "tabulated";
  c.forcing = ForcingKind::none;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.cadence = 0;
  c.u0.family = "zero";
  EXPECT_THROW(c.validate(), std::invalid_argument);
}
