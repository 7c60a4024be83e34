#pragma once

// Reference computations used by the tests. Each one is written directly
// from the defining formula, independent of the library code paths.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cld = std::complex<long double>;

/// (q^n - q^{-n}) / (q - q^{-1}) in complex arithmetic.
inline std::complex<double> symmetric_box(std::complex<double> q, int n) {
  return (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0 / q);
}

/// (1 - q^n) / (1 - q) in complex arithmetic.
inline std::complex<double> arik_coon_box(std::complex<double> q, int n) {
  return (1.0 - std::pow(q, n)) / (1.0 - q);
}

inline double phase_box(double theta, int n) { return std::sin(n * theta) / std::sin(theta); }

/// Cumulative products of boxes[1..n]; out[0] = 1.
inline std::vector<double> factorials(const std::vector<double>& boxes) {
  std::vector<double> out{1.0};
  for (std::size_t n = 1; n < boxes.size(); ++n) out.push_back(out.back() * boxes[n]);
  return out;
}

/// Box values 0..n_max of the Symmetric phase sequence.
inline std::vector<double> phase_boxes(double theta, int n_max) {
  std::vector<double> b;
  for (int n = 0; n <= n_max; ++n) b.push_back(phase_box(theta, n));
  return b;
}

/// Plain partial sum of x^n / fact[n] in extended precision.
inline std::complex<double> series(const std::vector<double>& fact, std::complex<double> x) {
  cld sum = 0;
  cld power = 1;
  const cld xl{x.real(), x.imag()};
  for (double f : fact) {
    sum += power / static_cast<long double>(f);
    power *= xl;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

/// Probabilists' Hermite polynomial He_n(t).
inline long double hermite_he(int n, long double t) {
  long double h0 = 1, h1 = t;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    const long double h2 = t * h1 - k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

/// Gaussian-regularized inverse transform of the terminating W-bar series
/// sum_n c_n (iy)^n, c_n = fact[n] / (pi n!), in closed form:
/// (1/2pi) int e^{-iyx - eps y^2} (iy)^n dy = He_n(x/s) G(x) / s^n, s^2 = 2 eps.
inline long double regularized_phase_weight(const std::vector<double>& fact, long double eps, long double x) {
  const long double s = std::sqrt(2 * eps);
  const long double gauss = std::exp(-x * x / (2 * s * s)) / (s * std::sqrt(2 * std::numbers::pi_v<long double>));
  long double sum = 0;
  long double n_fact = 1;
  long double s_pow = 1;
  for (std::size_t n = 0; n < fact.size(); ++n) {
    if (n > 0) {
      n_fact *= static_cast<long double>(n);
      s_pow *= s;
    }
    const long double c = fact[n] / (std::numbers::pi_v<long double> * n_fact);
    sum += c * hermite_he(static_cast<int>(n), x / s) / s_pow;
  }
  return sum * gauss;
}

/// Ladder matrices a[n-1][n] = sqrt(box[n]) and their adjoint, by loops.
inline Eigen::MatrixXcd ladder(const std::vector<std::complex<double>>& box_roots, int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = box_roots[static_cast<std::size_t>(n)];
  return a;
}

inline double bosonic_weight(double x) { return std::exp(-x) / std::numbers::pi; }

}  // namespace oracle
