#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "zk/inequality.hpp"

using namespace zk;
using std::numbers::pi;

namespace {

SinePolynomial2D first_mode(double L = 1.0, double B = 1.0) { return {L, B, 1, {1.0}}; }

}  // namespace

TEST(Chi, ClosedForms) {
  EXPECT_NEAR(compute_chi({1.0, 1.0}), 1.5 * pi * pi, 1e-12);
  EXPECT_NEAR(compute_chi({1.0, 2.0}), 21.0 * pi * pi / 16.0, 1e-12);
  double prev = compute_chi({1.0, 1.0});
  for (double L : {2.0, 4.0, 16.0, 256.0}) {
    const double c = compute_chi({L, 1.0});
    EXPECT_LT(c, prev);
    EXPECT_GT(c, 0.0);
    prev = c;
  }
  EXPECT_NEAR(compute_chi({1e6, 1.0}) * 2 * (1 + 1e6) / (pi * pi), 1.0, 1e-9);
}

TEST(Ladyzhenskaya, ZeroSample) {
  const SinePolynomial2D z{1.0, 1.0, 2, {0, 0, 0, 0}};
  EXPECT_EQ(check_ladyzhenskaya(z, LebesgueExponent::L4), 0.0);
  EXPECT_EQ(check_ladyzhenskaya(z, LebesgueExponent::L8), 0.0);
}

TEST(Ladyzhenskaya, SineProductClosedForm) {
  const auto u = first_mode();
  const double lhs4 = std::pow(9.0 / 64.0, 0.25);
  const double rhs4 = std::pow(pi * pi / 2.0, 0.25);
  EXPECT_NEAR(check_ladyzhenskaya(u, LebesgueExponent::L4), rhs4 - lhs4, 1e-13);
  // int sin^8 over one period half = 35/128 per axis; ||grad u||^2 = pi^2/2, ||u||^2 = 1/4.
  const double lhs8 = std::pow(35.0 / 128.0 * 35.0 / 128.0, 0.125);
  const double rhs8 = std::pow(4.0, 0.75) * std::pow(pi * pi / 2.0, 0.375) * std::pow(0.25, 0.125);
  EXPECT_NEAR(check_ladyzhenskaya(u, LebesgueExponent::L8), rhs8 - lhs8, 1e-13);
}

TEST(Ladyzhenskaya, RandomSamplesNeverViolate) {
  const TestFunctionFamily fam(1.0, 1.0, 6, 2024);
  for (int i = 0; i < 200; ++i) {
    const auto u = fam.sample(i);
    EXPECT_GE(check_ladyzhenskaya(u, LebesgueExponent::L4), -1e-10) << "sample " << i;
    EXPECT_GE(check_ladyzhenskaya(u, LebesgueExponent::L8), -1e-10) << "sample " << i;
  }
}

TEST(Steklov, FirstEigenfunctionIsSharp) {
  for (double L : {0.5, 1.0, 3.0}) EXPECT_NEAR(check_steklov({L, {1.0}}), 0.0, 1e-10);
}

TEST(Steklov, SecondEigenfunctionMargin) {
  for (double L : {1.0, 2.0}) {
    const double norm2 = L / 2.0;
    EXPECT_NEAR(check_steklov({L, {0.0, 1.0}}), 3 * pi * pi / (L * L) * norm2, 1e-11);
  }
}

TEST(Steklov, RandomSamples) {
  const TestFunctionFamily fam(2.0, 1.0, 10, 7);
  for (int i = 0; i < 200; ++i) EXPECT_GE(check_steklov(fam.sample_1d(i)), -1e-12);
}

TEST(SupBound, ZeroAndSineProduct) {
  EXPECT_EQ(check_sup_bound({1.0, 1.0, 1, {0.0}}), 0.0);
  const double bound = 2 * (0.25 + pi * pi / 2 + std::pow(pi, 4) / 4);
  EXPECT_NEAR(check_sup_bound(first_mode()), bound - 1.0, 1e-12);
}

TEST(SupBound, RandomSamplesNeverViolate) {
  const TestFunctionFamily fam(1.5, 0.5, 5, 99);
  for (int i = 0; i < 200; ++i) EXPECT_GE(check_sup_bound(fam.sample(i)), -1e-10);
}

TEST(TestFunctionFamily, SeededAndNormalised) {
  const TestFunctionFamily a(1.0, 2.0, 4, 5), b(1.0, 2.0, 4, 5), c(1.0, 2.0, 4, 6);
  EXPECT_EQ(a.sample(17).coeffs, b.sample(17).coeffs);
  EXPECT_NE(a.sample(17).coeffs, c.sample(17).coeffs);
  EXPECT_NEAR(sample_norms(a.sample(3)).l2, 1.0, 1e-12);
  const auto u = a.sample(8);
  for (double s : {0.0, 0.37, 0.81, 1.0}) {
    EXPECT_NEAR(u.jet(0.0, 2.0 * s)[0], 0.0, 1e-14);
    EXPECT_NEAR(u.jet(1.0, 2.0 * s)[0], 0.0, 1e-13);
    EXPECT_NEAR(u.jet(s, 0.0)[0], 0.0, 1e-14);
    EXPECT_NEAR(u.jet(s, 2.0)[0], 0.0, 1e-13);
  }
}

TEST(TraceProbe, ReportsFiniteRatio) {
  const double r4 = trace_probe_ratio(1.0, 1.0, 4);
  EXPECT_TRUE(std::isfinite(r4));
  EXPECT_GT(r4, 0.0);
}

TEST(Threshold, ZeroDatumAdmissible) {
  const auto r = compute_threshold_m(InitialData::analytic({}), DomainSpec{});
  EXPECT_TRUE(std::isinf(r.m));
  EXPECT_TRUE(r.admissible);
  EXPECT_EQ(r.u0_norm, 0.0);
}

namespace {

// Independent long-double evaluation for u0 = x (1-x)^2 sin(pi y) on the unit square.
struct Oracle {
  long double lap2, cubic2, c0, cs, norm2;
};

Oracle canonical_oracle() {
  // Every integrand separates into f(x) g(y); integrate each factor in one dimension.
  using boost::math::quadrature::gauss_kronrod;
  using LD = long double;
  const LD p = 3.14159265358979323846264338327950288L;
  auto q = [](auto f) { return gauss_kronrod<LD, 61>::integrate(f, 0.0L, 1.0L, 6, 1e-18L); };
  auto P = [](LD x) { return x * (1 - x) * (1 - x); };
  auto P1 = [](LD x) { return (1 - x) * (1 - 3 * x); };
  auto lapx = [&](LD x) { return 6 - p * p * P1(x); };  // Delta u0x = lapx(x) sin(pi y)
  auto cubx = [&](LD x) { return P(x) * P(x) * P1(x); };  // u0^2 u0x = cubx(x) sin^3(pi y)
  auto sn = [&](int n) { return q([&](LD y) { return std::pow(std::sin(p * y), n); }); };
  const LD s2 = sn(2), s4 = sn(4), s6 = sn(6);
  const LD c2 = q([&](LD y) { return std::pow(std::cos(p * y), 2); });
  Oracle o;
  o.lap2 = q([&](LD x) { return lapx(x) * lapx(x); }) * s2;
  o.cubic2 = q([&](LD x) { return cubx(x) * cubx(x); }) * s6;
  o.c0 = q([&](LD x) { return (1 + x) * lapx(x) * lapx(x); }) * s2 +
         2 * q([&](LD x) { return (1 + x) * lapx(x) * cubx(x); }) * s4 +
         q([&](LD x) { return (1 + x) * cubx(x) * cubx(x); }) * s6;
  o.norm2 = q([&](LD x) { return P(x) * P(x); }) * s2;
  const LD ux2 = q([&](LD x) { return P1(x) * P1(x); }) * s2;
  const LD uy2 = p * p * q([&](LD x) { return P(x) * P(x); }) * c2;
  const LD uxy2 = p * p * q([&](LD x) { return P1(x) * P1(x); }) * c2;
  o.cs = 2 * (o.norm2 + ux2 + uy2 + uxy2);
  return o;
}

}  // namespace

TEST(Threshold, CanonicalDatumMatchesIndependentOracle) {
  const DomainSpec d{1.0, 1.0};
  const auto r = compute_threshold_m(make_canonical_u0(d, 1.0, 1), d);
  const Oracle o = canonical_oracle();
  using LD = long double;
  const LD p = 3.14159265358979323846264338327950288L;
  const LD s = std::sqrt(o.lap2) + std::sqrt(o.cubic2);
  const LD num = p * p / 16 * 2;
  const LD den = 5 * 128 * 2 * s * (1 + 25 * 32768.0L * 64 * s);
  const LD m = std::cbrt(num / den);
  EXPECT_NEAR(r.m, static_cast<double>(m), 1e-8 * static_cast<double>(m));
  EXPECT_NEAR(r.ut0_surrogate, static_cast<double>(s), 1e-10 * static_cast<double>(s));
  EXPECT_NEAR(r.C0, static_cast<double>(o.c0), 1e-10 * static_cast<double>(o.c0));
  EXPECT_NEAR(r.Cs, static_cast<double>(o.cs), 1e-10 * static_cast<double>(o.cs));
  EXPECT_NEAR(r.u0_norm * r.u0_norm, 1.0 / 210.0, 1e-14);
  EXPECT_FALSE(r.admissible);
  EXPECT_NEAR(r.C0_bound, 2.0 * r.ut0_surrogate * r.ut0_surrogate, 1e-12);
}

TEST(Threshold, SurrogateHomogeneity) {
  const DomainSpec d{1.0, 1.0};
  const auto a = compute_threshold_m(make_canonical_u0(d, 0.3, 1), d);
  const auto b = compute_threshold_m(make_canonical_u0(d, 0.6, 1), d);
  EXPECT_NEAR(b.delta_u0x, 2 * a.delta_u0x, 1e-12 * b.delta_u0x);
  EXPECT_NEAR(b.cubic_u0, 8 * a.cubic_u0, 1e-12 * b.cubic_u0);
}

TEST(Threshold, MStrictlyDecreasingInSurrogate) {
  const DomainSpec d{1.0, 1.0};
  double prev = std::numeric_limits<double>::infinity();
  for (double s : {1e-8, 1e-5, 1e-2, 1.0, 100.0}) {
    const double m = smallness_bound(d, s);
    EXPECT_LT(m, prev);
    prev = m;
  }
}

TEST(Threshold, CanonicalAdmissibility) {
  const DomainSpec d{1.0, 1.0};
  EXPECT_TRUE(compute_threshold_m(make_canonical_u0(d, 0.01, 1), d).admissible);
  EXPECT_FALSE(compute_threshold_m(make_canonical_u0(d, 0.1, 1), d).admissible);
}

TEST(Threshold, TabulatedPathAgreesWithAnalytic) {
  const DomainSpec d{1.0, 1.0};
  TabulatedField f{256, 64, {}};
  for (int i = 0; i <= 256; ++i) {
    for (int k = 0; k <= 64; ++k) {
      const double x = i / 256.0;
      f.values.push_back(0.01 * x * (1 - x) * (1 - x) * std::sin(pi * k / 64.0));
    }
  }
  GridSpec g;
  g.N = 4;
  g.K = 9;
  g.M = 256;
  const auto tab = compute_threshold_m(InitialData::tabulated(f), d, g);
  const auto ana = compute_threshold_m(make_canonical_u0(d, 0.01, 1), d);
  EXPECT_NEAR(tab.u0_norm, ana.u0_norm, 1e-4 * ana.u0_norm);
  EXPECT_NEAR(tab.ut0_surrogate, ana.ut0_surrogate, 1e-2 * ana.ut0_surrogate);
  EXPECT_NEAR(tab.m, ana.m, 1e-2 * ana.m);
  EXPECT_EQ(tab.admissible, ana.admissible);
}
