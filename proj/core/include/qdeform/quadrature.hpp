#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qdeform/error.hpp"

namespace qdeform::quadrature {

using Real = long double;
using Complex = std::complex<Real>;

struct AdaptiveOptions {
  Real abs_tol = 0.0L;
  Real rel_tol = 1e-16L;  ///< relative to the integral of |f| over the whole range
  int initial_panels = 16;
  long max_panels = 2'000'000;
  Real noise_density = 0.0L;  ///< evaluation noise of f: a panel whose error is below
                              ///< noise_density * width is accepted
};

struct AdaptiveResult {
  Complex value{};
  Real error_estimate = 0.0L;
  Real abs_integral = 0.0L;
  long panels = 0;
  long evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<Real, 8> kKronrodNodes = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
inline constexpr std::array<Real, 8> kKronrodWeights = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
inline constexpr std::array<Real, 4> kGaussWeights = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

struct Panel {
  Real a, b;
  Complex kronrod;
  Real error;
  Real abs_value;
};

template <class F>
Panel gk15(F& f, Real a, Real b) {
  const Real center = 0.5L * (a + b);
  const Real half = 0.5L * (b - a);
  const Complex fc = f(center);
  Complex kronrod = fc * kKronrodWeights[7];
  Complex gauss = fc * kGaussWeights[3];
  Real abs_value = std::abs(fc) * kKronrodWeights[7];
  for (int j = 0; j < 7; ++j) {
    const Real dx = half * kKronrodNodes[static_cast<std::size_t>(j)];
    const Complex f1 = f(center - dx);
    const Complex f2 = f(center + dx);
    const Real w = kKronrodWeights[static_cast<std::size_t>(j)];
    kronrod += w * (f1 + f2);
    abs_value += w * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kGaussWeights[static_cast<std::size_t>(j / 2)] * (f1 + f2);
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half), abs_value * std::abs(half)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) on [a, b] for a complex-valued integrand.
/// Panels are refined depth-first from the left and accumulated in
/// left-to-right order, so the result does not depend on scheduling.
/// Throws QuadratureFailure once more than `max_panels` panels are evaluated.
template <class F>
AdaptiveResult integrate_adaptive(F&& f, Real a, Real b, const AdaptiveOptions& options = {}) {
  AdaptiveResult result;
  if (!(b > a)) return result;
  const int n0 = std::max(1, options.initial_panels);
  std::vector<detail::Panel> pending;
  pending.reserve(static_cast<std::size_t>(n0));
  const Real width = (b - a) / n0;
  for (int i = 0; i < n0; ++i) {
    const Real lo = a + width * i;
    const Real hi = i + 1 == n0 ? b : a + width * (i + 1);
    pending.push_back(detail::gk15(f, lo, hi));
    result.abs_integral += pending.back().abs_value;
  }
  result.panels = n0;
  const Real tol = std::max(options.abs_tol, options.rel_tol * result.abs_integral);
  const Real total = b - a;

  // Stack holds panels still to be judged; reversed so the leftmost is on top.
  std::vector<detail::Panel> stack(pending.rbegin(), pending.rend());
  while (!stack.empty()) {
    detail::Panel p = stack.back();
    stack.pop_back();
    const Real allowance = tol * (p.b - p.a) / total;
    const bool tiny = (p.b - p.a) <= 64 * std::numeric_limits<Real>::epsilon() * std::max(std::abs(p.a), std::abs(p.b));
    const bool roundoff = p.error <= 50 * std::numeric_limits<Real>::epsilon() * p.abs_value ||
                          p.error <= options.noise_density * (p.b - p.a);
    if (p.error <= allowance || tiny || roundoff) {
      result.value += p.kronrod;
      result.error_estimate += p.error;
      continue;
    }
    if (result.panels + 2 > options.max_panels) {
      throw Error(ErrorCode::QuadratureFailure,
                  "adaptive refinement exceeded " + std::to_string(options.max_panels) + " panels");
    }
    const Real mid = 0.5L * (p.a + p.b);
    detail::Panel right = detail::gk15(f, mid, p.b);
    detail::Panel left = detail::gk15(f, p.a, mid);
    result.panels += 2;
    stack.push_back(right);
    stack.push_back(left);
  }
  result.evaluations = result.panels * 15;
  return result;
}

/// Composite Simpson rule on an arbitrary increasing grid (quadratic through
/// consecutive point triples; an odd interval count closes with a one-sided
/// quadratic on the last interval).
template <class T>
T integrate_on_grid(std::span<const double> x, std::span<const T> y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw Error(ErrorCode::DimensionMismatch, "grid and values differ in length");
  if (n < 2) return T{};
  if (n == 2) return static_cast<T>((x[1] - x[0]) * 0.5) * (y[0] + y[1]);
  T sum{};
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    const T h0 = static_cast<T>(x[i + 1] - x[i]);
    const T h1 = static_cast<T>(x[i + 2] - x[i + 1]);
    const T hs = h0 + h1;
    sum += hs / 6 * ((2 - h1 / h0) * y[i] + hs * hs / (h0 * h1) * y[i + 1] + (2 - h0 / h1) * y[i + 2]);
  }
  if (i + 1 < n) {
    // Last interval [x[n-2], x[n-1]] from the quadratic through the final three points.
    const T h0 = static_cast<T>(x[n - 2] - x[n - 3]);
    const T h1 = static_cast<T>(x[n - 1] - x[n - 2]);
    sum += h1 * (y[n - 1] * (2 * h1 + 3 * h0) / (6 * (h0 + h1)) + y[n - 2] * (h1 + 3 * h0) / (6 * h0) -
                 y[n - 3] * h1 * h1 / (6 * h0 * (h0 + h1)));
  }
  return sum;
}

/// Evenly spaced points from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, int points);

}  // namespace qdeform::quadrature
