#include "qdeform/measure.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "qdeform/error.hpp"
#include "qdeform/factorial.hpp"
#include "qdeform/quadrature.hpp"

namespace qdeform {

namespace {

using quadrature::Complex;
using quadrature::Real;

constexpr Real kPi = std::numbers::pi_v<Real>;

bool is_closing_phase(const SpectrumSequence& s) { return s.closure_order().has_value(); }

/// W-bar in extended precision: the bosonic closed form, or the terminating
/// polynomial sum_n c_n (iy)^n with c_n = [n]!/(pi n!) for a closing phase.
class WbarEvaluator {
 public:
  WbarEvaluator(const SpectrumSequence& sequence, int order) : bosonic_(sequence.bosonic()) {
    require_measure_support(sequence);
    if (bosonic_) return;
    const int degree = std::min(order, *sequence.closure_order() - 1);
    coeffs_.resize(static_cast<std::size_t>(degree) + 1);
    coeffs_[0] = 1.0L / kPi;
    for (int n = 1; n <= degree; ++n) {
      coeffs_[static_cast<std::size_t>(n)] =
          coeffs_[static_cast<std::size_t>(n) - 1] * static_cast<Real>(box_value(sequence, n)) / n;
    }
  }

  Complex operator()(Real y) const {
    if (bosonic_) return Complex{1.0L, y} / (kPi * (1.0L + y * y));
    // Horner in (iy): (re + i im)(iy) = -im y + i re y.
    Real re = 0.0L;
    Real im = 0.0L;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      const Real next_re = -im * y + *it;
      im = re * y;
      re = next_re;
    }
    return {re, im};
  }

  int degree() const { return bosonic_ ? -1 : static_cast<int>(coeffs_.size()) - 1; }
  int terms() const { return bosonic_ ? 0 : static_cast<int>(coeffs_.size()); }

 private:
  bool bosonic_;
  std::vector<Real> coeffs_;
};

Real damped_magnitude(const WbarEvaluator& wbar, Real epsilon, Real y) {
  return std::exp(-epsilon * y * y) * std::abs(wbar(y));
}

/// Beyond this point e^{-eps y^2} |W-bar(y)| is decreasing.
Real monotone_start(const WbarEvaluator& wbar, Real epsilon) {
  const int d = std::max(wbar.degree(), 1);
  return std::sqrt(static_cast<Real>(d) / (2.0L * epsilon));
}

void require_increasing(std::span<const double> grid) {
  if (grid.size() < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least two points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw Error(ErrorCode::InvalidArgument, "grid must be strictly increasing");
  }
}

template <class T>
T trapezoid(std::span<const double> x, std::span<const T> y) {
  T sum{};
  for (std::size_t i = 1; i < x.size(); ++i) {
    sum += static_cast<T>(x[i] - x[i - 1]) * (y[i] + y[i - 1]) / 2;
  }
  return sum;
}

}  // namespace

void require_measure_support(const SpectrumSequence& sequence) {
  if (sequence.bosonic()) return;
  const auto kind = sequence.deformation().kind();
  switch (sequence.kind()) {
    case SequenceKind::Fibonacci:
      throw Error(ErrorCode::Unsupported, "no measure construction for the Fibonacci sequence");
    case SequenceKind::ArikCoon:
      if (kind == Deformation::Kind::PhaseQ) {
        throw Error(ErrorCode::NonRealValue, "Arik-Coon box values are complex for phase q");
      }
      throw Error(ErrorCode::Unsupported, "real-q Arik-Coon measure is not constructed here");
    case SequenceKind::Symmetric:
      if (kind == Deformation::Kind::RealQ) {
        throw Error(ErrorCode::Diverges, "W-bar series diverges for real q != 1");
      }
      if (!is_closing_phase(sequence)) {
        // The moments turn negative past pi/theta; name the first bad level.
        const double theta = sequence.deformation().phase_angle();
        q_factorial(sequence, static_cast<int>(std::ceil(std::numbers::pi / theta)) + 1);
      }
      return;
    case SequenceKind::Linear:
      return;
  }
}

double moment_target(const SpectrumSequence& sequence, int n) {
  return moment_targets(sequence, n).mu.back();
}

MomentTarget moment_targets(const SpectrumSequence& sequence, int n_max) {
  if (sequence.kind() == SequenceKind::Fibonacci) {
    throw Error(ErrorCode::Unsupported, "no measure construction for the Fibonacci sequence");
  }
  const auto table = q_factorial(sequence, n_max);
  MomentTarget target{sequence, n_max, {}};
  target.mu.reserve(table.values.size());
  for (double v : table.values) target.mu.push_back(v / std::numbers::pi);
  return target;
}

WbarValue wbar_series(const SpectrumSequence& sequence, double y, int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "order must be non-negative", order);
  const auto kind = sequence.deformation().kind();
  if (sequence.kind() == SequenceKind::Fibonacci) {
    throw Error(ErrorCode::Unsupported, "no measure construction for the Fibonacci sequence");
  }
  WbarValue out;
  if (sequence.bosonic()) {
    out.value = 1.0 / (std::numbers::pi * std::complex<double>(1.0, -y));
    out.order = order;
    out.last_term = std::pow(std::abs(y), order) / std::numbers::pi;
    out.max_term = std::max(1.0, out.last_term) / std::numbers::pi;
    out.closed_form = true;
    return out;
  }
  if (kind == Deformation::Kind::RealQ) {
    throw Error(ErrorCode::Diverges, "W-bar series diverges for real q != 1");
  }
  if (sequence.kind() == SequenceKind::ArikCoon) {
    throw Error(ErrorCode::NonRealValue, "Arik-Coon box values are complex for phase q");
  }
  std::complex<double> term{1.0 / std::numbers::pi, 0.0};
  std::complex<double> sum = term;
  out.max_term = std::abs(term);
  out.last_term = std::abs(term);
  const std::complex<double> iy{0.0, y};
  for (int n = 1; n <= order; ++n) {
    if (sequence.vanishes(n)) break;  // every later factorial is zero
    term *= box_value(sequence, n) * iy / static_cast<double>(n);
    sum += term;
    out.order = n;
    out.last_term = std::abs(term);
    out.max_term = std::max(out.max_term, out.last_term);
  }
  out.value = sum;
  return out;
}

double auto_y_cutoff(const SpectrumSequence& sequence, double epsilon, int order) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  const WbarEvaluator wbar(sequence, order);
  const Real eps = epsilon;
  const Real start = monotone_start(wbar, eps);
  if (damped_magnitude(wbar, eps, start) < kCutoffThreshold) return static_cast<double>(start);
  Real lo = start;
  Real hi = 2.0L * start;
  while (damped_magnitude(wbar, eps, hi) >= kCutoffThreshold) {
    lo = hi;
    hi *= 2.0L;
    if (hi > 1e8L) {
      throw Error(ErrorCode::NonDecayingIntegrand,
                  "damped W-bar does not fall below 1e-12 for y < 1e8 at eps = " + format_value(epsilon));
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-6L * hi; ++it) {
    const Real mid = 0.5L * (lo + hi);
    (damped_magnitude(wbar, eps, mid) < kCutoffThreshold ? hi : lo) = mid;
  }
  return static_cast<double>(hi);
}

WeightTable invert_weight(const SpectrumSequence& sequence, std::span<const double> grid,
                          double epsilon, double y_cutoff, int order,
                          const InversionOptions& options) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  require_increasing(grid);
  if (options.support == Support::HalfLine && grid.front() < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "half-line tables need a grid with x >= 0");
  }
  const WbarEvaluator wbar(sequence, order);
  const Real eps = epsilon;
  if (y_cutoff <= 0.0) {
    y_cutoff = auto_y_cutoff(sequence, epsilon, order);
  } else if (y_cutoff < static_cast<double>(monotone_start(wbar, eps)) ||
             damped_magnitude(wbar, eps, y_cutoff) >= kCutoffThreshold) {
    throw Error(ErrorCode::NonDecayingIntegrand,
                "damped W-bar exceeds 1e-12 beyond y_cutoff = " + format_value(y_cutoff));
  }
  const Real cutoff = y_cutoff;
  const bool folded = options.support == Support::HalfLine;
  Real envelope = 0.0L;  // max of e^{-eps y^2} |W-bar| on [0, cutoff]
  for (int k = 0; k <= 512; ++k) envelope = std::max(envelope, damped_magnitude(wbar, eps, cutoff * k / 512));

  const std::size_t n = grid.size();
  std::vector<Complex> raw(n);
  auto evaluate = [&](std::size_t j) {
    const Real x = grid[j];
    auto integrand = [&](Real y) -> Complex {
      const Complex w = std::exp(-eps * y * y) * wbar(y);
      if (folded) return w * (2.0L * std::cos(x * y));
      return w * Complex{std::cos(x * y), -std::sin(x * y)};
    };
    quadrature::AdaptiveOptions quad;
    quad.rel_tol = options.quad_rel_tol;
    quad.max_panels = options.max_panels;
    // cos(xy) carries an absolute phase error of about eps |x y|.
    quad.noise_density =
        8.0L * std::numeric_limits<Real>::epsilon() * (std::abs(x) * cutoff + 1.0L) * envelope;
    const Real panels = std::ceil(cutoff * (std::abs(x) + 1.0L) / 3.0L);
    quad.initial_panels = static_cast<int>(std::clamp(panels, 16.0L, 1.0e6L));
    const auto left = quadrature::integrate_adaptive(integrand, -cutoff, 0.0L, quad);
    const auto right = quadrature::integrate_adaptive(integrand, 0.0L, cutoff, quad);
    raw[j] = (left.value + right.value) / (2.0L * kPi);
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t j = 0; j < n; ++j) evaluate(j);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t j = t; j < n; j += threads) evaluate(j);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  WeightTable table;
  table.sequence = sequence;
  table.support = options.support;
  table.grid.assign(grid.begin(), grid.end());
  table.values.resize(n);
  Real max_re = 0.0L;
  Real max_im = 0.0L;
  for (std::size_t j = 0; j < n; ++j) {
    table.values[j] = raw[j].real();
    max_re = std::max(max_re, std::abs(raw[j].real()));
    max_im = std::max(max_im, std::abs(raw[j].imag()));
  }
  table.imag_residue = max_re > 0 ? static_cast<double>(max_im / max_re) : 0.0;
  // Roundoff (the imaginary part is zero in exact arithmetic) plus the
  // neglected Fourier tail beyond the cutoff.
  const Real g_cut = damped_magnitude(wbar, eps, cutoff);
  const Real decay = 2.0L * eps * cutoff - std::max(wbar.degree(), 0) / cutoff;
  const Real tail = decay > 0 ? g_cut / decay : g_cut * cutoff;
  table.noise_floor = static_cast<double>(max_im + tail / kPi);
  table.epsilon = epsilon;
  table.y_cutoff = y_cutoff;
  table.series_order = wbar.terms();
  table.origin = "inversion";
  return table;
}

WeightTable extrapolate(std::span<const WeightTable> ladder, ExtrapolationVariable variable) {
  if (ladder.empty()) throw Error(ErrorCode::InvalidArgument, "empty epsilon ladder");
  const auto& first = ladder.front();
  for (const auto& t : ladder) {
    if (!(t.sequence == first.sequence) || t.support != first.support || t.grid != first.grid) {
      throw Error(ErrorCode::DimensionMismatch, "ladder tables must share sequence, support and grid");
    }
    if (!(t.epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "ladder tables need epsilon > 0");
  }
  const std::size_t k = ladder.size();
  std::vector<Real> h(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Real e = ladder[i].epsilon;
    h[i] = variable == ExtrapolationVariable::Epsilon ? e : std::sqrt(e);
  }
  // Lagrange weights of the interpolant evaluated at h = 0.
  std::vector<Real> w(k, 1.0L);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      if (h[i] == h[j]) throw Error(ErrorCode::InvalidArgument, "ladder epsilons must be distinct");
      w[i] *= -h[j] / (h[i] - h[j]);
    }
  }
  WeightTable out = first;
  out.epsilon = 0.0;
  out.origin = "extrapolated";
  out.moment_report.reset();
  out.epsilon_ladder.clear();
  out.imag_residue = 0.0;
  out.noise_floor = 0.0;
  for (std::size_t i = 0; i < k; ++i) out.noise_floor += static_cast<double>(std::abs(w[i])) * ladder[i].noise_floor;
  for (std::size_t j = 0; j < out.values.size(); ++j) {
    Real v = 0.0L;
    for (std::size_t i = 0; i < k; ++i) v += w[i] * ladder[i].values[j];
    out.values[j] = v;
  }
  for (const auto& t : ladder) {
    out.epsilon_ladder.push_back(t.epsilon);
    out.imag_residue = std::max(out.imag_residue, t.imag_residue);
    out.y_cutoff = std::max(out.y_cutoff, t.y_cutoff);
  }
  return out;
}

double MomentReport::max_rel_error() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.rel_error);
  return m;
}

MomentReport verify_moments(const WeightTable& table, int n_check) {
  if (n_check < 0) throw Error(ErrorCode::InvalidArgument, "n_check must be non-negative", n_check);
  if (table.grid.size() != table.values.size() || table.grid.size() < 3) {
    throw Error(ErrorCode::DimensionMismatch, "weight table grid and values are inconsistent");
  }
  const auto targets = moment_targets(table.sequence, n_check);
  const std::span<const double> x{table.grid};
  const bool full = table.support == Support::FullLine;
  MomentReport report;
  std::vector<Real> integrand(x.size());
  for (int n = 0; n <= n_check; ++n) {
    Real peak = 0.0L;
    for (std::size_t j = 0; j < x.size(); ++j) {
      integrand[j] = std::pow(static_cast<Real>(x[j]), n) * table.values[j];
      peak = std::max(peak, std::abs(integrand[j]));
    }
    const Real noise = 10.0L * table.noise_floor;
    const bool short_right =
        std::abs(integrand.back()) > 1e-10L * peak && std::abs(table.values.back()) > noise;
    const bool short_left =
        full && std::abs(integrand.front()) > 1e-10L * peak && std::abs(table.values.front()) > noise;
    if (short_right || short_left) {
      throw Error(ErrorCode::GridTooShort,
                  std::string("moment integrand has not decayed at the ") + (short_right ? "right" : "left") +
                      " end of the grid",
                  n);
    }
    const std::span<const Real> y{integrand};
    const Real achieved = full ? trapezoid(x, y) : quadrature::integrate_on_grid(x, y);
    const double target = targets.mu[static_cast<std::size_t>(n)];
    MomentEntry e;
    e.n = n;
    e.achieved = static_cast<double>(achieved);
    e.target = target;
    e.rel_error = static_cast<double>(std::abs(achieved - static_cast<Real>(target)) / std::abs(static_cast<Real>(target)));
    report.entries.push_back(e);
  }
  return report;
}

double bosonic_weight(double x) {
  if (x < 0.0) throw Error(ErrorCode::InvalidArgument, "bosonic weight is defined for x >= 0");
  return std::exp(-x) / std::numbers::pi;
}

WeightTable bosonic_table(std::span<const double> grid) {
  require_increasing(grid);
  if (grid.front() != 0.0) throw Error(ErrorCode::InvalidArgument, "closed-form table grid must start at 0");
  WeightTable table;
  table.sequence = SpectrumSequence{SequenceKind::Linear};
  table.support = Support::HalfLine;
  table.grid.assign(grid.begin(), grid.end());
  table.values.reserve(grid.size());
  for (double x : grid) table.values.push_back(std::exp(-static_cast<Real>(x)) / kPi);
  table.origin = "closed-form";
  return table;
}

namespace {

/// Smallest X > n with n ln X - X <= n ln n - n + ln(ratio).
double decay_point(int n_check, double ratio) {
  const double n = std::max(n_check, 1);
  const double floor = n * std::log(n) - n + std::log(ratio);
  double x = n + 1.0;
  while (n * std::log(x) - x > floor) x += 0.5;
  return x;
}

}  // namespace

std::vector<double> bosonic_grid(int n_check) {
  if (n_check < 0) throw Error(ErrorCode::InvalidArgument, "n_check must be non-negative", n_check);
  const double hi = std::ceil(decay_point(n_check, 1e-13));
  return quadrature::uniform_grid(0.0, hi, static_cast<int>(hi * 100.0) + 1);
}

std::vector<double> default_grid(const SpectrumSequence& sequence, Support support, int n_check,
                                 std::span<const double> epsilons) {
  if (epsilons.empty()) throw Error(ErrorCode::InvalidArgument, "empty epsilon ladder");
  require_measure_support(sequence);
  const double eps_max = *std::max_element(epsilons.begin(), epsilons.end());
  const double eps_min = *std::min_element(epsilons.begin(), epsilons.end());
  const double spread = std::sqrt(2.0 * eps_max);  // std of the regularizing Gaussian
  // Aliasing of the grid rule sits at 2 pi / h; keep it beyond twice the cutoff.
  const double h = std::min(0.05, std::numbers::pi / auto_y_cutoff(sequence, eps_min, 1 << 20));

  double lo = 0.0;
  double hi = 0.0;
  if (sequence.bosonic()) {
    hi = decay_point(n_check, 1e-12) + 10.0 * spread;
    lo = support == Support::FullLine ? -12.0 * spread : 0.0;
  } else {
    const int m = *sequence.closure_order();
    const double reach = spread * (2.0 * std::sqrt(static_cast<double>(m + n_check)) + 6.0);
    hi = reach;
    lo = support == Support::FullLine ? -reach : 0.0;
  }
  const int points = static_cast<int>(std::ceil((hi - lo) / h)) + 1;
  return quadrature::uniform_grid(lo, hi, points | 1);
}

CertifiedWeight certify_weight(const SpectrumSequence& sequence, const CertifyOptions& options) {
  CertifiedWeight out;
  const auto grid = options.grid.empty()
                        ? default_grid(sequence, options.inversion.support, options.n_check, options.epsilons)
                        : options.grid;
  for (double eps : options.epsilons) {
    out.ladder.push_back(invert_weight(sequence, grid, eps, 0.0, options.order, options.inversion));
  }
  out.extrapolated = extrapolate(out.ladder, options.variable);
  out.report = verify_moments(out.extrapolated, options.n_check);
  out.extrapolated.moment_report = out.report;
  return out;
}

}  // namespace qdeform
