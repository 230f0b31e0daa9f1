#pragma once

#include "gtcorr/metric.h"

namespace gtcorr {

// Scale of a Rayleigh distribution: the norm of a zero-mean isotropic 2D
// Gaussian with per-axis standard deviation sigma.
class RayleighParams {
 public:
  // Throws DomainError unless sigma > 0 and finite.
  explicit RayleighParams(double sigma);
  double sigma() const { return sigma_; }

 private:
  double sigma_;
};

// Rice(v, sigma): the norm of an isotropic 2D Gaussian whose mean vector has
// norm v. Rice(0, sigma) is Rayleigh(sigma).
class RiceParams {
 public:
  // Throws DomainError unless v >= 0 and sigma > 0, both finite.
  RiceParams(double v, double sigma);
  double v() const { return v_; }
  double sigma() const { return sigma_; }

 private:
  double v_;
  double sigma_;
};

// Modified Bessel functions of the first kind. Power series for |z| <= 15,
// asymptotic expansion above. I0 is even, I1 odd.
double bessel_i0(double z);
double bessel_i1(double z);
// Exponentially scaled forms exp(-|z|) * I(z); finite for any z.
double bessel_i0e(double z);
double bessel_i1e(double z);

double rayleigh_pdf(double x, const RayleighParams& p);
double rayleigh_cdf(double x, const RayleighParams& p);
double rayleigh_mean(const RayleighParams& p);
double rayleigh_quantile(const RayleighParams& p, double q);
double rayleigh_stat(const RayleighParams& p, const Metric& metric);

double rice_pdf(double x, const RiceParams& p);
// Adaptive Gauss-Kronrod quadrature of rice_pdf over [0, x].
double rice_cdf(double x, const RiceParams& p);
// Closed form through I0 and I1.
double rice_mean(const RiceParams& p);
// Quadrature of x * rice_pdf(x) over the support; independent of rice_mean.
double rice_mean_quadrature(const RiceParams& p);
// Bisection on rice_cdf.
double rice_quantile(const RiceParams& p, double q);
double rice_stat(const RiceParams& p, const Metric& metric);

}  // namespace gtcorr
