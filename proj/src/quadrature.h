#pragma once

#include <array>
#include <cmath>
#include <limits>

namespace gtcorr::detail {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the center.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double value;
  double error;
};

template <typename F>
Segment gauss_kronrod_15(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

template <typename F>
double adaptive_integrate(F& f, double a, double b, double tol, int depth) {
  const Segment s = gauss_kronrod_15(f, a, b);
  // Below roundoff further splitting cannot improve the estimate.
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(s.value);
  if (s.error <= tol || s.error <= roundoff || depth <= 0) return s.value;
  const double mid = 0.5 * (a + b);
  return adaptive_integrate(f, a, mid, 0.5 * tol, depth - 1) +
         adaptive_integrate(f, mid, b, 0.5 * tol, depth - 1);
}

// Integral of f over [a, b] to absolute tolerance tol, bisecting locally
// until the Kronrod-Gauss difference of each piece is within its share.
template <typename F>
double integrate(F f, double a, double b, double tol = 1e-13) {
  if (!(b > a)) return 0.0;
  return adaptive_integrate(f, a, b, tol, 30);
}

}  // namespace gtcorr::detail
