#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "qdeform/bargmann.hpp"
#include "qdeform/coherent.hpp"
#include "qdeform/error.hpp"
#include "qdeform/expq.hpp"
#include "qdeform/factorial.hpp"
#include "qdeform/fock.hpp"
#include "qdeform/io.hpp"
#include "qdeform/measure.hpp"
#include "qdeform/quadrature.hpp"

namespace qdeform::cli {

namespace {

using io::Json;
using cd = std::complex<double>;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// What a command hands back: its results block, whether every check
/// passed, and an optional non-JSON payload (qnum text, weight CSV).
struct Outcome {
  Json results = Json::object();
  bool passed = true;
  std::optional<std::string> text;
};

SequenceKind parse_kind(const std::string& name) {
  if (name == "linear") return SequenceKind::Linear;
  if (name == "arik-coon" || name == "arikcoon") return SequenceKind::ArikCoon;
  if (name == "symmetric") return SequenceKind::Symmetric;
  if (name == "fibonacci") return SequenceKind::Fibonacci;
  throw ValidationError("unknown sequence '" + name + "'");
}

Deformation make_deformation(const RunConfig& c) {
  if (c.q && c.theta) throw ValidationError("--q and --theta are mutually exclusive");
  if (c.theta) return Deformation::phase(*c.theta);
  if (c.q && *c.q != 1.0) return Deformation::real(*c.q);
  return Deformation::classical();
}

SpectrumSequence make_sequence(const RunConfig& c) {
  const auto kind = parse_kind(c.sequence);
  const auto deformation = make_deformation(c);
  if (kind == SequenceKind::Fibonacci && deformation.kind() != Deformation::Kind::Classical) {
    throw ValidationError("the Fibonacci sequence carries no deformation");
  }
  return SpectrumSequence{kind, deformation};
}

Realization make_realization(const std::string& name) {
  if (name == "hermitian") return Realization::Hermitian;
  if (name == "algebraic") return Realization::Algebraic;
  throw ValidationError("unknown realization '" + name + "'");
}

double tolerance(const RunConfig& c, double fallback) {
  const double t = c.tol.value_or(fallback);
  if (!(t > 0.0)) throw ValidationError("--tol must be positive");
  return t;
}

/// qnum text: 10 significant digits, integral values keep a ".0".
std::string format_scalar(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 10);
  std::string s(buf.data(), res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

cd parse_amplitude(const std::string& text) {
  const auto comma = text.find(',');
  auto number = [&](std::string_view part) {
    double v = 0.0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
    if (res.ec != std::errc{} || res.ptr != part.data() + part.size()) {
      throw ValidationError("bad amplitude '" + text + "'");
    }
    return v;
  };
  const std::string_view all{text};
  if (comma == std::string::npos) return {number(all), 0.0};
  return {number(all.substr(0, comma)), number(all.substr(comma + 1))};
}

Json config_json(const SpectrumSequence& seq) {
  Json j;
  j["sequence"] = io::to_json(seq);
  return j;
}

// --- commands --------------------------------------------------------------

Outcome run_qnum(const RunConfig& c, Json& config) {
  const auto seq = make_sequence(c);
  config = config_json(seq);
  config["n"] = c.n;
  if (c.n < 0) throw ValidationError("--n must be non-negative");
  const double value = box_value(seq, c.n);
  Outcome o;
  o.results["n"] = c.n;
  o.results["value"] = value;
  if (c.format.empty() || c.format == "text") o.text = format_scalar(value) + "\n";
  return o;
}

Outcome run_expq(const RunConfig& c, Json& config) {
  const auto seq = make_sequence(c);
  const double tol = tolerance(c, 1e-12);
  const cd x{c.x_re, c.x_im};
  config = config_json(seq);
  config["x"] = io::complex_json(x);
  config["tol"] = tol;
  config["reciprocal"] = c.reciprocal;
  const auto series = exp_q_series(seq, x, tol);
  Outcome o;
  o.results["value"] = io::complex_json(c.reciprocal ? 1.0 / series.value : series.value);
  if (c.reciprocal && std::abs(series.value) < tol) {
    throw Error(ErrorCode::DivisionByZero, "exp_q(x) vanishes to tolerance");
  }
  o.results["order"] = series.order;
  o.results["tail_bound"] = series.tail_bound;
  o.results["terminated"] = series.terminated;
  return o;
}

Outcome run_dump_ops(const RunConfig& c, Json& config) {
  const auto seq = make_sequence(c);
  const auto realization = make_realization(c.realization);
  config = config_json(seq);
  config["n_max"] = c.n_max;
  config["realization"] = c.realization;
  Outcome o;
  o.results = io::to_json(build_operators(seq, c.n_max, realization));
  return o;
}

Outcome run_verify_algebra(const RunConfig& c, Json& config) {
  const auto seq = make_sequence(c);
  const auto realization = make_realization(c.realization);
  const double tol = tolerance(c, 1e-12);
  config = config_json(seq);
  config["n_max"] = c.n_max;
  config["realization"] = c.realization;
  config["tol"] = tol;

  const auto ops = build_operators(seq, c.n_max, realization);
  const cd q = seq.deformation().value();
  Outcome o;
  const auto qm = verify_qmutator(ops, q);
  o.results["qmutator"] = io::to_json(qm);
  o.passed = qm.max() <= tol;
  if (seq.kind() == SequenceKind::Symmetric) {
    const double r = verify_Q_oscillator(ops, q);
    o.results["q_oscillator"] = r;
    o.passed = o.passed && r <= tol;
  }
  if (c.target_theta) {
    const auto target = Deformation::phase(*c.target_theta);
    const cd alpha{c.alpha_re, c.alpha_im};
    config["target_theta"] = *c.target_theta;
    config["alpha"] = io::complex_json(alpha);
    const auto fmap = build_fmap(seq, target, alpha, c.n_max, realization);
    const auto native = build_operators(SpectrumSequence{SequenceKind::Symmetric, target}, c.n_max, realization);
    const Eigen::MatrixXcd A = fmap.annihilation(ops);
    const Eigen::MatrixXcd Ad = fmap.creation(ops);
    const double diff = std::max((A - native.a).cwiseAbs().maxCoeff(), (Ad - native.a_dag).cwiseAbs().maxCoeff());
    const double res = q_oscillator_residual(A, Ad, target.value());
    Json fm;
    fm["f"] = io::vector_json(fmap.f);
    fm["q_oscillator"] = res;
    fm["native_difference"] = diff;
    o.results["fmap"] = std::move(fm);
    // The native comparison only applies at alpha = 1; the relation holds
    // for any alpha only up to the factor alpha.
    const bool unit_alpha = alpha == cd{1.0, 0.0};
    o.passed = o.passed && (!unit_alpha || (res <= tol && diff <= tol));
  }
  o.results["passed"] = o.passed;
  return o;
}

Outcome run_coherent(const RunConfig& c, Json& config) {
  const auto seq = make_sequence(c);
  const double tol = tolerance(c, 1e-10);
  const cd z{c.z_re, c.z_im};
  config = config_json(seq);
  config["z"] = io::complex_json(z);
  config["tol"] = tol;
  const auto state = build_state(seq, z, tol);
  const auto ops = build_operators(seq, std::max(state.n_max, 2));
  const double residual = eigen_residual(state, ops);
  const double bound = 10.0 * state.tail_bound + 64.0 * std::numeric_limits<double>::epsilon();
  Outcome o;
  o.results = io::to_json(state);
  o.results["eigen_residual"] = residual;
  o.results["eigen_bound"] = bound;
  o.passed = residual <= bound;
  o.results["passed"] = o.passed;
  return o;
}

Outcome run_overlap(const RunConfig& c, Json& config) {
  const auto seq = make_sequence(c);
  const double tol = tolerance(c, 1e-10);
  config = config_json(seq);
  config["tol"] = tol;
  Outcome o;
  if (c.pairs > 0) {
    if (!(c.radius > 0.0)) throw ValidationError("--radius must be positive");
    const std::uint64_t seed = c.seed.value_or(1);
    config["pairs"] = c.pairs;
    config["radius"] = c.radius;
    config["seed"] = seed;
    std::mt19937_64 rng(seed);
    auto draw = [&] {
      const double r = c.radius * std::sqrt(std::generate_canonical<double, 64>(rng));
      const double phi = 2.0 * std::numbers::pi * std::generate_canonical<double, 64>(rng);
      return std::polar(r, phi);
    };
    double worst = 0.0;
    double worst_bound = 0.0;
    for (int k = 0; k < c.pairs; ++k) {
      const cd z1 = draw();
      const cd z2 = draw();
      const auto gap = continuity_gap(build_state(seq, z1, tol), build_state(seq, z2, tol));
      const double d = std::abs(gap.lhs - gap.rhs);
      worst = std::max(worst, d);
      worst_bound = std::max(worst_bound, gap.bound);
    }
    o.results["max_gap"] = worst;
    o.results["max_bound"] = worst_bound;
    o.passed = worst <= tol;
  } else {
    const cd z1{c.z_re, c.z_im};
    const cd z2{c.z2_re, c.z2_im};
    config["z1"] = io::complex_json(z1);
    config["z2"] = io::complex_json(z2);
    const auto s1 = build_state(seq, z1, tol);
    const auto s2 = build_state(seq, z2, tol);
    const auto gap = continuity_gap(s1, s2);
    o.results["overlap"] = io::complex_json(overlap(s1, s2));
    o.results["lhs"] = gap.lhs;
    o.results["rhs"] = gap.rhs;
    o.results["gap"] = std::abs(gap.lhs - gap.rhs);
    o.results["bound"] = gap.bound;
    o.passed = std::abs(gap.lhs - gap.rhs) <= std::max(tol, gap.bound);
  }
  o.results["passed"] = o.passed;
  return o;
}

std::vector<double> user_grid(const RunConfig& c, Support support) {
  if (!c.x_max && !c.points && !c.x_min) return {};
  const double hi = c.x_max.value_or(16.0);
  const double lo = c.x_min.value_or(support == Support::FullLine ? -hi : 0.0);
  const int points = c.points.value_or(2049);
  if (!(hi > lo) || points < 3) throw ValidationError("grid needs x_max > x_min and at least 3 points");
  return quadrature::uniform_grid(lo, hi, points);
}

Support parse_support(const std::string& s) {
  if (s == "full") return Support::FullLine;
  if (s == "half") return Support::HalfLine;
  throw ValidationError("unknown support '" + s + "'");
}

ExtrapolationVariable parse_extrapolation(const std::string& s) {
  if (s == "epsilon") return ExtrapolationVariable::Epsilon;
  if (s == "sqrt-epsilon") return ExtrapolationVariable::SqrtEpsilon;
  throw ValidationError("unknown extrapolation variable '" + s + "'");
}

/// The table a measure command works with: closed form for the bosonic
/// spectrum when asked, otherwise an extrapolated ladder.
WeightTable build_weight(const RunConfig& c, const SpectrumSequence& seq, int n_check, Json& config) {
  const Support support = parse_support(c.support);
  auto grid = user_grid(c, support);
  if (c.closed_form) {
    if (!seq.bosonic()) throw ValidationError("--closed-form needs the bosonic spectrum");
    if (grid.empty()) grid = bosonic_grid(n_check);
    config["closed_form"] = true;
    config["points"] = grid.size();
    config["x_max"] = grid.back();
    auto table = bosonic_table(grid);
    table.moment_report = verify_moments(table, n_check);
    return table;
  }
  CertifyOptions opts;
  if (!c.epsilons.empty()) opts.epsilons = c.epsilons;
  opts.n_check = n_check;
  opts.order = c.order;
  opts.grid = grid;
  opts.variable = parse_extrapolation(c.extrapolation);
  opts.inversion.support = support;
  for (double e : opts.epsilons) {
    if (!(e > 0.0)) throw ValidationError("epsilons must be positive");
  }
  config["support"] = c.support;
  config["epsilons"] = opts.epsilons;
  config["extrapolation"] = c.extrapolation;
  config["order"] = c.order;
  if (opts.epsilons.size() == 1) {
    if (opts.grid.empty()) opts.grid = default_grid(seq, support, n_check, opts.epsilons);
    auto table = invert_weight(seq, opts.grid, opts.epsilons.front(), 0.0, c.order, opts.inversion);
    table.moment_report = verify_moments(table, n_check);
    return table;
  }
  auto certified = certify_weight(seq, opts);
  return certified.extrapolated;
}

Outcome run_weight(const RunConfig& c, Json& config) {
  const auto seq = make_sequence(c);
  config = config_json(seq);
  config["n_check"] = c.n_check;
  if (c.n_check < 0) throw ValidationError("--n-check must be non-negative");
  const auto table = build_weight(c, seq, c.n_check, config);
  Outcome o;
  o.results = io::to_json(table);
  if (c.tol) {
    config["tol"] = *c.tol;
    o.passed = table.moment_report->max_rel_error() <= tolerance(c, 0.0);
    o.results["passed"] = o.passed;
  }
  if (c.format.empty() || c.format == "csv") {
    std::ostringstream csv;
    io::write_weight_csv(csv, table);
    o.text = csv.str();
  }
  return o;
}

Outcome run_verify_unity(const RunConfig& c, Json& config) {
  const auto seq = make_sequence(c);
  const double tol = tolerance(c, 1e-6);
  config = config_json(seq);
  config["n_check"] = c.n_check;
  config["tol"] = tol;
  if (c.n_check < 0) throw ValidationError("--n-check must be non-negative");
  RunConfig local = c;
  // The bosonic weight is known in closed form; the inversion path stays
  // available through `weight`.
  if (seq.bosonic() && c.epsilons.empty()) local.closed_form = true;
  const auto table = build_weight(local, seq, c.n_check, config);
  Outcome o;
  o.results["moment_report"] = io::to_json(*table.moment_report);
  o.results["origin"] = table.origin;
  o.passed = table.moment_report->max_rel_error() <= tol;
  o.results["passed"] = o.passed;
  return o;
}

Outcome run_bargmann(const RunConfig& c, Json& config) {
  const auto seq = make_sequence(c);
  const double tol = tolerance(c, 1e-3);
  const cd z{c.z_re, c.z_im};
  config = config_json(seq);
  config["tol"] = tol;
  config["z"] = io::complex_json(z);

  Eigen::VectorXcd amps;
  if (c.amplitudes.empty()) {
    amps = Eigen::VectorXcd::Zero(1);
    amps[0] = 1.0;
  } else {
    amps.resize(static_cast<Eigen::Index>(c.amplitudes.size()));
    for (std::size_t k = 0; k < c.amplitudes.size(); ++k) amps[static_cast<Eigen::Index>(k)] = parse_amplitude(c.amplitudes[k]);
  }
  const double norm = amps.norm();
  if (!(norm > 0.0)) throw ValidationError("state amplitudes are all zero");
  amps /= norm;
  config["amplitudes"] = io::vector_json(amps);

  std::optional<CoherentState> prime;
  int levels = static_cast<int>(amps.size());
  if (c.zp_re || c.zp_im) {
    const cd zp{c.zp_re.value_or(0.0), c.zp_im.value_or(0.0)};
    config["z_prime"] = io::complex_json(zp);
    prime = build_state(seq, zp, 1e-12);
    levels = std::max(levels, prime->n_max);
  }
  require_positive(seq, levels - 1);
  RunConfig local = c;
  if (seq.bosonic() && c.epsilons.empty()) local.closed_form = true;
  const auto weight = build_weight(local, seq, levels - 1, config);

  Outcome o;
  const auto inv = q_factorial(seq, static_cast<int>(amps.size()) - 1);
  double scale = 0.0;  // sum of |terms| of psi(conj z): the moment-error lever arm
  for (Eigen::Index n = 0; n < amps.size(); ++n) {
    scale += std::pow(std::abs(z), static_cast<double>(n)) * std::abs(amps[n]) /
             std::sqrt(inv.values[static_cast<std::size_t>(n)]);
  }
  try {
    const cd symbol = to_symbol(amps, seq, std::conj(z));
    const cd kernel = kernel_reproduce(amps, weight, seq, z, tol);
    const auto rec = reconstruct(amps, weight, seq, tol);
    const cd norm_symbol = symbol_inner_product(amps, amps, weight, seq, tol);
    o.results["symbol_at_z"] = io::complex_json(to_symbol(amps, seq, z));
    o.results["symbol_at_conj_z"] = io::complex_json(symbol);
    o.results["kernel"] = io::complex_json(kernel);
    o.results["kernel_error"] = std::abs(kernel - symbol);
    o.results["norm_symbol"] = io::complex_json(norm_symbol);
    o.results["reconstruction_deviation"] = rec.deviation;
    o.results["moment_error"] = rec.moment_error;
    o.passed = std::abs(kernel - symbol) <= tol * scale && rec.deviation <= tol &&
               std::abs(norm_symbol - 1.0) <= tol;
    if (prime) {
      const auto oc = overcompleteness_check(prime->z, weight, seq, tol);
      o.results["overcompleteness"] = io::to_json(oc);
      o.passed = o.passed && oc.deviation <= tol;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MomentQualityTooLow) throw;
    o.results["error"] = e.what();
    o.passed = false;
  }
  o.results["passed"] = o.passed;
  return o;
}

// --- plumbing ----------------------------------------------------------------

void add_sequence_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--sequence", c.sequence, "linear | arik-coon | symmetric | fibonacci")->capture_default_str();
  sub->add_option("--q", c.q, "real deformation parameter (1 = classical)");
  sub->add_option("--theta", c.theta, "phase angle in radians, q = e^{i theta}");
}

void add_output_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--format", c.format, "output format");
  sub->add_option("--output,-o", c.output, "output path (default stdout)");
  sub->add_flag("--no-timing", c.no_timing, "report runtime_ms as 0 for byte-identical output");
}

void add_measure_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--x-min", c.x_min, "grid start");
  sub->add_option("--x-max", c.x_max, "grid end");
  sub->add_option("--points", c.points, "grid points");
  sub->add_option("--epsilons", c.epsilons, "regularization ladder")->delimiter(',');
  sub->add_option("--order", c.order, "W-bar series order")->capture_default_str();
  sub->add_option("--support", c.support, "full | half")->capture_default_str();
  sub->add_option("--extrapolation", c.extrapolation, "epsilon | sqrt-epsilon")->capture_default_str();
  sub->add_flag("--closed-form", c.closed_form, "use e^{-x}/pi (bosonic only)");
}

using Runner = std::function<Outcome(const RunConfig&, Json&)>;

int emit(const RunConfig& c, const Outcome& o, const Json& config, double runtime_ms, std::ostream& out) {
  Json doc;
  doc["command"] = c.command;
  doc["config"] = config;
  doc["results"] = o.results;
  Json meta;
  meta["version"] = kVersion;
  meta["runtime_ms"] = c.no_timing ? 0.0 : runtime_ms;
  if (config.contains("seed")) meta["seed"] = config["seed"];
  doc["metadata"] = std::move(meta);
  const std::string json_text = doc.dump(2) + "\n";

  auto write = [&](const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
      out << payload;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open '" + path + "' for writing");
    f << payload;
  };
  if (o.text) {
    write(c.output, *o.text);
    if (!c.report.empty()) write(c.report, json_text);
  } else {
    write(c.output, json_text);
  }
  return o.passed ? kOk : kVerificationFailed;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MomentQualityTooLow:
    case ErrorCode::NoConvergence:
    case ErrorCode::QuadratureFailure:
      return kVerificationFailed;
    default:
      return kValidationError;
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"q-deformed oscillator algebras, coherent states and their measures", "qdeform"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::vector<std::pair<CLI::App*, Runner>> commands;
  auto add = [&](const char* name, const char* about, Runner run) {
    CLI::App* sub = app.add_subcommand(name, about);
    add_sequence_options(sub, c);
    add_output_options(sub, c);
    commands.emplace_back(sub, std::move(run));
    return sub;
  };

  auto* qnum = add("qnum", "box value [rho_n]_q", run_qnum);
  qnum->add_option("--n", c.n, "level")->required();

  auto* expq = add("expq", "deformed exponential", run_expq);
  expq->add_option("--x", c.x_re, "argument, real part");
  expq->add_option("--x-imag", c.x_im, "argument, imaginary part");
  expq->add_option("--tol", c.tol, "absolute tolerance (default 1e-12)");
  expq->add_flag("--reciprocal", c.reciprocal, "return 1 / exp_q(x)");

  auto* dump = add("dump-ops", "ladder operator matrices", run_dump_ops);
  dump->add_option("--n-max", c.n_max, "truncation dimension")->capture_default_str();
  dump->add_option("--realization", c.realization, "hermitian | algebraic")->capture_default_str();

  auto* valg = add("verify-algebra", "q-mutator, Q-oscillator and F-map residuals", run_verify_algebra);
  valg->add_option("--n-max", c.n_max, "truncation dimension")->capture_default_str();
  valg->add_option("--realization", c.realization, "hermitian | algebraic")->capture_default_str();
  valg->add_option("--tol", c.tol, "residual tolerance (default 1e-12)");
  valg->add_option("--target-theta", c.target_theta, "map onto the Q-oscillator with Q = e^{i theta}");
  valg->add_option("--alpha", c.alpha_re, "F-map alpha, real part");
  valg->add_option("--alpha-imag", c.alpha_im, "F-map alpha, imaginary part");

  auto* coh = add("coherent", "normalized coherent state", run_coherent);
  coh->add_option("--z", c.z_re, "label, real part");
  coh->add_option("--z-imag", c.z_im, "label, imaginary part");
  coh->add_option("--tol", c.tol, "tail tolerance (default 1e-10)");

  auto* ovl = add("overlap", "overlap and continuity identity", run_overlap);
  ovl->add_option("--z1", c.z_re, "first label, real part");
  ovl->add_option("--z1-imag", c.z_im, "first label, imaginary part");
  ovl->add_option("--z2", c.z2_re, "second label, real part");
  ovl->add_option("--z2-imag", c.z2_im, "second label, imaginary part");
  ovl->add_option("--tol", c.tol, "tail tolerance and gap limit (default 1e-10)");
  ovl->add_option("--pairs", c.pairs, "check this many random pairs instead");
  ovl->add_option("--radius", c.radius, "disk radius for random pairs")->capture_default_str();
  ovl->add_option("--seed", c.seed, "random seed (default 1)");

  auto* wt = add("weight", "regularized weight table", run_weight);
  wt->add_option("--n-check", c.n_check, "highest moment reported")->capture_default_str();
  wt->add_option("--tol", c.tol, "fail when a moment error exceeds this");
  wt->add_option("--report", c.report, "also write the JSON report here");
  add_measure_options(wt, c);

  auto* vu = add("verify-unity", "moment certification of the resolution of unity", run_verify_unity);
  vu->add_option("--n-check", c.n_check, "highest moment checked")->capture_default_str();
  vu->add_option("--tol", c.tol, "relative moment tolerance (default 1e-6)");
  add_measure_options(vu, c);

  auto* bg = add("bargmann", "analytic symbols and the reproducing kernel", run_bargmann);
  bg->add_option("--amp", c.amplitudes, "Fock amplitude 're[,im]', repeat per level");
  bg->add_option("--z", c.z_re, "evaluation point, real part");
  bg->add_option("--z-imag", c.z_im, "evaluation point, imaginary part");
  bg->add_option("--z-prime", c.zp_re, "overcompleteness label, real part");
  bg->add_option("--z-prime-imag", c.zp_im, "overcompleteness label, imaginary part");
  bg->add_option("--tol", c.tol, "moment tolerance (default 1e-3)");
  add_measure_options(bg, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kValidationError;
  }

  for (auto& [sub, run] : commands) {
    if (!sub->parsed()) continue;
    c.command = sub->get_name();
    Json config;
    try {
      const auto start = std::chrono::steady_clock::now();
      const Outcome o = run(c, config);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      return emit(c, o, config, ms, out);
    } catch (const ValidationError& e) {
      err << "error: " << e.what() << "\n";
      return kValidationError;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return exit_code_for(e.code());
    }
  }
  err << app.help();
  return kValidationError;
}

}  // namespace qdeform::cli
