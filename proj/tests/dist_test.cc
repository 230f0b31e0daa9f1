#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gtcorr/dist.h"
#include "gtcorr/errors.h"
#include "gtcorr/metric.h"
#include "gtcorr/sim.h"
#include "oracle.h"

namespace gtcorr {
namespace {

constexpr double kSqrtHalfPi = 1.2533141373155002;

TEST(Bessel, MatchesDefiningSeries) {
  EXPECT_NEAR(bessel_i0(1.0), 1.2660658777520083, 1e-15);
  EXPECT_NEAR(bessel_i0(10.0), 2815.7166284662545, 1e-9);
  EXPECT_NEAR(bessel_i1(1.0), 0.5651591039924850, 1e-15);
  EXPECT_NEAR(bessel_i1(0.25), 0.12597910894546793, 1e-15);
  for (double z : {0.0, 0.3, 2.0, 7.5, 14.9, 15.1, 20.0, 30.0, 60.0}) {
    const double i0 = static_cast<double>(oracle::series_i0(z));
    const double i1 = static_cast<double>(oracle::series_i1(z));
    EXPECT_NEAR(bessel_i0(z), i0, 1e-13 * i0) << z;
    EXPECT_NEAR(bessel_i1(z), i1, 1e-13 * std::max(i1, 1e-300)) << z;
  }
}

TEST(Bessel, SymmetryAndScaling) {
  EXPECT_DOUBLE_EQ(bessel_i0(-3.0), bessel_i0(3.0));
  EXPECT_DOUBLE_EQ(bessel_i1(-3.0), -bessel_i1(3.0));
  EXPECT_EQ(bessel_i0(0.0), 1.0);
  EXPECT_EQ(bessel_i1(0.0), 0.0);
  for (double z : {0.5, 12.0, 40.0}) {
    EXPECT_NEAR(bessel_i0e(z), std::exp(-z) * bessel_i0(z), 1e-14);
    EXPECT_NEAR(bessel_i1e(z), std::exp(-z) * bessel_i1(z), 1e-14);
  }
  // Leading asymptote 1/sqrt(2 pi z).
  const double z = 1e6;
  EXPECT_NEAR(bessel_i0e(z) * std::sqrt(2 * std::numbers::pi * z), 1.0, 1e-6);
  EXPECT_TRUE(std::isfinite(bessel_i0e(1e300)));
}

TEST(Rayleigh, ClosedForms) {
  const RayleighParams p(2.0);
  EXPECT_NEAR(rayleigh_mean(p), 2.0 * kSqrtHalfPi, 1e-15);
  EXPECT_NEAR(rayleigh_quantile(p, 0.95), 2.0 * std::sqrt(-2.0 * std::log(0.05)), 1e-14);
  EXPECT_NEAR(rayleigh_cdf(rayleigh_quantile(p, 0.3), p), 0.3, 1e-15);
  EXPECT_EQ(rayleigh_cdf(0.0, p), 0.0);
  EXPECT_EQ(rayleigh_pdf(0.0, p), 0.0);
  EXPECT_NEAR(rayleigh_pdf(2.0, p), 0.5 * std::exp(-0.5), 1e-15);
  EXPECT_NEAR(rayleigh_stat(p, Metric::median()), rayleigh_quantile(p, 0.5), 0.0);
}

TEST(Rayleigh, RejectsBadArguments) {
  EXPECT_THROW(RayleighParams(0.0), DomainError);
  EXPECT_THROW(RayleighParams(-1.0), DomainError);
  EXPECT_THROW(RayleighParams(NAN), DomainError);
  const RayleighParams p(1.0);
  EXPECT_THROW(rayleigh_quantile(p, 0.0), DomainError);
  EXPECT_THROW(rayleigh_quantile(p, 1.0), DomainError);
}

TEST(Rice, RejectsBadArguments) {
  EXPECT_THROW(RiceParams(-0.1, 1.0), DomainError);
  EXPECT_THROW(RiceParams(1.0, 0.0), DomainError);
  EXPECT_THROW(RiceParams(INFINITY, 1.0), DomainError);
  EXPECT_THROW(rice_quantile(RiceParams(1, 1), 1.5), DomainError);
}

TEST(Rice, PdfMatchesUnscaledFormula) {
  EXPECT_NEAR(rice_pdf(1.0, RiceParams(1.0, 1.0)), 0.46575960759364044, 1e-14);
  for (auto [x, v, s] : {std::tuple{0.5, 0.0, 1.0}, {3.0, 2.0, 1.5}, {24.0, 20.0, 2.0},
                         {41.0, 40.0, 1.5}}) {
    const double want = static_cast<double>(oracle::rice_pdf(x, v, s));
    EXPECT_NEAR(rice_pdf(x, RiceParams(v, s)), want, 1e-12 * want) << x << " " << v;
  }
  EXPECT_EQ(rice_pdf(0.0, RiceParams(1.0, 1.0)), 0.0);
  EXPECT_THROW(rice_pdf(-1.0, RiceParams(1.0, 1.0)), DomainError);
  // Scaled Bessel keeps the product finite far from the origin.
  EXPECT_NEAR(rice_pdf(5000.0, RiceParams(5000.0, 1.0)), 1.0 / std::sqrt(2 * std::numbers::pi), 1e-4);
}

TEST(Rice, MeanAgreesWithOracles) {
  EXPECT_NEAR(rice_mean(RiceParams(1.0, 1.0)), 1.5485724605511454, 1e-12);
  EXPECT_NEAR(rice_mean(RiceParams(100.0, 1.0)), 100.00500012501876, 1e-9);
  for (double v : {0.0, 0.7, 3.0, 10.0}) {
    for (double s : {1.0, 2.78}) {
      const RiceParams p(v, s);
      const double simpson = oracle::rice_mean(v, s);
      EXPECT_NEAR(rice_mean(p), simpson, 1e-10 * simpson);
      EXPECT_NEAR(rice_mean_quadrature(p), simpson, 1e-10 * simpson);
    }
  }
}

TEST(Rice, DensityIntegratesToOne) {
  for (auto [v, s] : {std::pair{0.0, 1.0}, {3.0, 0.5}, {10.0, 2.78}}) {
    const double mass = static_cast<double>(oracle::simpson(
        [&](long double x) { return rice_pdf(static_cast<double>(x), RiceParams(v, s)); },
        0.0L, v + 12.0 * s));
    EXPECT_NEAR(mass, 1.0, 1e-6);
  }
}

TEST(Rice, ClosedFormMeanMatchesQuadratureAcrossOffsets) {
  for (double k : {0.0, 0.1, 1.0, 3.0, 10.0, 50.0}) {
    const RiceParams p(k * 1.3, 1.3);
    EXPECT_NEAR(rice_mean(p), rice_mean_quadrature(p), 1e-6 * rice_mean(p)) << k;
  }
}

TEST(Rice, CdfAndQuantileAgreeWithOracle) {
  EXPECT_NEAR(rice_cdf(2.0, RiceParams(3.0, 1.5)), 0.15924504577419915, 1e-11);
  EXPECT_NEAR(rice_quantile(RiceParams(5.0, 1.0), 0.5), 5.0996760375676519, 1e-9);
  EXPECT_NEAR(rice_quantile(RiceParams(3.0, 2.0), 0.95), 6.7369264397599854, 1e-9);
  for (double x : {0.3, 1.0, 4.0, 9.0}) {
    EXPECT_NEAR(rice_cdf(x, RiceParams(2.5, 1.2)), oracle::rice_cdf(x, 2.5, 1.2), 1e-11);
  }
  EXPECT_NEAR(rice_quantile(RiceParams(4.0, 0.5), 0.25), oracle::rice_quantile(4.0, 0.5, 0.25),
              1e-9);
  EXPECT_EQ(rice_cdf(0.0, RiceParams(1.0, 1.0)), 0.0);
}

TEST(Rice, CdfMonotoneAndBounded) {
  const RiceParams p(3.0, 1.0);
  double prev = 0.0;
  for (double x = 0.0; x < 25.0; x += 0.25) {
    const double c = rice_cdf(x, p);
    EXPECT_GE(c, prev - 1e-15);
    EXPECT_LE(c, 1.0 + 1e-12);
    prev = c;
  }
  EXPECT_NEAR(prev, 1.0, 1e-12);
}

TEST(Rice, ReducesToRayleighAtZeroOffset) {
  for (double s : {0.14, 1.0, 2.78}) {
    const RiceParams rice(0.0, s);
    const RayleighParams ray(s);
    EXPECT_NEAR(rice_mean(rice), rayleigh_mean(ray), 1e-12 * s);
    for (double q : {0.05, 0.5, 0.95}) {
      EXPECT_NEAR(rice_quantile(rice, q), rayleigh_quantile(ray, q), 1e-9 * s);
      const double x = rayleigh_quantile(ray, q);
      EXPECT_NEAR(rice_cdf(x, rice), rayleigh_cdf(x, ray), 1e-12);
    }
  }
}

TEST(Rice, ScalesLinearlyInSigma) {
  for (const Metric& m : {Metric::mean(), Metric::median(), Metric::tail95()}) {
    const double unit = rice_stat(RiceParams(1.7, 1.0), m);
    EXPECT_NEAR(rice_stat(RiceParams(1.7 * 3.3, 3.3), m), 3.3 * unit, 1e-12 * unit) << m.label();
  }
}

TEST(Rice, LargeOffsetLimits) {
  const RiceParams p(100.0, 1.0);
  EXPECT_NEAR(rice_mean(p), 100.0 + 1.0 / 200.0, 1e-6);
  EXPECT_LT(rice_quantile(p, 0.95) / rice_quantile(p, 0.5), 1.05);
  EXPECT_TRUE(std::isfinite(rice_mean(RiceParams(1e6, 1.0))));
}

TEST(Rice, MonteCarloAgrees) {
  for (const Metric& m : {Metric::mean(), Metric::median(), Metric::tail95()}) {
    const McEstimate mc = mc_rice_stat(3.0, 2.78, m, 200000, 11);
    EXPECT_NEAR(rice_stat(RiceParams(3.0, 2.78), m), mc.value, 4.0 * mc.std_error) << m.label();
  }
}

}  // namespace
}  // namespace gtcorr
