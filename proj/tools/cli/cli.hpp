#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qdeform::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kValidationError = 2 };

/// Everything a subcommand may read. Unset optionals fall back to the
/// per-command defaults.
struct RunConfig {
  std::string command;
  std::string sequence = "symmetric";
  std::optional<double> q;
  std::optional<double> theta;
  int n = 0;
  int n_max = 8;
  std::optional<double> tol;
  std::string realization = "hermitian";

  double x_re = 0.0, x_im = 0.0;
  bool reciprocal = false;

  double z_re = 0.0, z_im = 0.0;
  double z2_re = 0.0, z2_im = 0.0;
  std::optional<double> zp_re, zp_im;
  int pairs = 0;
  double radius = 2.0;
  std::optional<std::uint64_t> seed;

  std::optional<double> target_theta;
  double alpha_re = 1.0, alpha_im = 0.0;

  std::optional<double> x_min, x_max;
  std::optional<int> points;
  std::vector<double> epsilons;
  int n_check = 6;
  int order = 64;
  std::string support = "full";
  std::string extrapolation = "epsilon";
  bool closed_form = false;

  std::vector<std::string> amplitudes;

  std::string format;
  std::string output;
  std::string report;
  bool no_timing = false;
};

/// Runs one subcommand. `args` excludes the program name. Returns 0 on
/// success, 1 when a verification exceeds its tolerance, 2 on invalid input.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdeform::cli
