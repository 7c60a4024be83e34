#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdeform/sequence.hpp"

namespace qdeform {

/// Target moments of the resolution-of-unity weight:
///   integral x^n W~(x) dx = [rho_n]_q! / pi.
struct MomentTarget {
  SpectrumSequence sequence{SequenceKind::Linear};
  int n_max = 0;
  std::vector<double> mu;
};

double moment_target(const SpectrumSequence& sequence, int n);
MomentTarget moment_targets(const SpectrumSequence& sequence, int n_max);

/// Throws unless the sequence has a measure construction here: the bosonic
/// spectrum, or the Symmetric box at a phase q = e^{i pi/m}.
void require_measure_support(const SpectrumSequence& sequence);

struct WbarValue {
  std::complex<double> value;
  int order = 0;            ///< highest power of y included
  double last_term = 0.0;   ///< |last included term|
  double max_term = 0.0;    ///< largest |term|, a cancellation indicator
  bool closed_form = false;
};

/// W-bar(y) = sum_n [rho_n]_q! (iy)^n / (pi n!), the Fourier transform of
/// the weight. For phase q the terms are bounded by (|y|/sin theta)^n / n!,
/// so the series converges for every y. For the bosonic spectrum the series
/// is geometric with radius 1 and its continuation 1/(pi (1 - iy)) is
/// returned instead. Diverges for real q != 1.
WbarValue wbar_series(const SpectrumSequence& sequence, double y, int order);

/// Which inverse transform a weight table holds.
///
/// FullLine: W~_eps(x) = (1/2pi) int e^{-iyx - eps y^2} W-bar(y) dy on any
/// real grid. Its moments are exact polynomials in eps; use it to certify.
///
/// HalfLine: the folded transform W~_eps(x) + W~_eps(-x) on x >= 0. For a
/// weight that is a function on [0, inf) this converges to W~(0+) at the
/// origin instead of the midpoint of the jump; use it for pointwise values.
enum class Support { FullLine, HalfLine };

struct MomentEntry {
  int n = 0;
  double achieved = 0.0;
  double target = 0.0;
  double rel_error = 0.0;
};

struct MomentReport {
  std::vector<MomentEntry> entries;
  double max_rel_error() const;
};

struct WeightTable {
  SpectrumSequence sequence{SequenceKind::Linear};
  Support support = Support::FullLine;
  std::vector<double> grid;
  std::vector<long double> values;  ///< W~ on the grid; long double because
                                    ///< phase-q values reach 1e13 with O(1) moments
  double imag_residue = 0.0;        ///< max |Im| / max |Re| of the inversion
  double noise_floor = 0.0;         ///< absolute roundoff level of the values (max |Im|)
  double epsilon = 0.0;             ///< 0 for closed-form or extrapolated tables
  double y_cutoff = 0.0;
  int series_order = 0;
  std::vector<double> epsilon_ladder;  ///< set on extrapolated tables
  std::string origin;                  ///< "inversion", "extrapolated", "closed-form"
  std::optional<MomentReport> moment_report;
};

struct InversionOptions {
  Support support = Support::FullLine;
  long double quad_rel_tol = 1e-17L;
  long max_panels = 4'000'000;
  unsigned threads = 0;  ///< 0 picks std::thread::hardware_concurrency()
};

inline constexpr double kCutoffThreshold = 1e-12;

/// Smallest y past which e^{-eps y^2} |W-bar(y)| stays below 1e-12.
/// Throws NonDecayingIntegrand if no such y below 1e8 exists.
double auto_y_cutoff(const SpectrumSequence& sequence, double epsilon, int order);

/// Gaussian-regularized inverse Fourier transform of W-bar on `grid`, by
/// adaptive quadrature over [-y_cutoff, y_cutoff]. y_cutoff <= 0 picks
/// auto_y_cutoff. A supplied cutoff that violates the decay criterion throws
/// NonDecayingIntegrand.
WeightTable invert_weight(const SpectrumSequence& sequence, std::span<const double> grid,
                          double epsilon, double y_cutoff, int order,
                          const InversionOptions& options = {});

enum class ExtrapolationVariable { Epsilon, SqrtEpsilon };

/// Polynomial (Neville) extrapolation of a ladder of tables to eps = 0.
/// Tables must share sequence, support and grid.
WeightTable extrapolate(std::span<const WeightTable> ladder,
                        ExtrapolationVariable variable = ExtrapolationVariable::Epsilon);

/// Moments n = 0..n_check of a table by composite quadrature on its grid
/// (trapezoid on FullLine tables, which decay at both ends and are smooth;
/// Simpson on HalfLine tables). Throws GridTooShort when the integrand at an
/// open end of the grid exceeds 1e-10 of its peak while the weight there is
/// still above ten times the table's noise floor.
MomentReport verify_moments(const WeightTable& table, int n_check);

/// e^{-x} / pi, the bosonic solution of the moment problem.
double bosonic_weight(double x);

/// Closed-form bosonic weight sampled on a grid starting at 0.
WeightTable bosonic_table(std::span<const double> grid);

/// Grid [0, X] with spacing 0.01 on which x^n e^{-x} has decayed to 1e-13 of
/// its peak for every n <= n_check.
std::vector<double> bosonic_grid(int n_check);

/// A ladder run: tables per epsilon, their extrapolation and its moments.
struct CertifiedWeight {
  std::vector<WeightTable> ladder;
  WeightTable extrapolated;
  MomentReport report;
};

struct CertifyOptions {
  std::vector<double> epsilons{1e-2, 5e-3, 2.5e-3};
  int n_check = 6;
  int order = 64;
  std::vector<double> grid;  ///< empty picks default_grid
  ExtrapolationVariable variable = ExtrapolationVariable::Epsilon;
  InversionOptions inversion{};
};

/// Grid that holds the regularized weight for every epsilon in the ladder
/// and the moments up to n_check: extends to negative x for FullLine tables.
std::vector<double> default_grid(const SpectrumSequence& sequence, Support support, int n_check,
                                 std::span<const double> epsilons);

CertifiedWeight certify_weight(const SpectrumSequence& sequence, const CertifyOptions& options = {});

}  // namespace qdeform
