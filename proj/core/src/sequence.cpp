#include "qdeform/sequence.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qdeform/error.hpp"

namespace qdeform {

namespace {

constexpr double kSineZero = 1e-12;
constexpr int kFibonacciLimit = 1477;  // F_1477 overflows a double

const std::array<double, kFibonacciLimit>& fibonacci_table() {
  static const std::array<double, kFibonacciLimit> table = [] {
    std::array<double, kFibonacciLimit> t{};
    t[0] = 0.0;
    t[1] = 1.0;
    for (int n = 2; n < kFibonacciLimit; ++n) t[n] = t[n - 1] + t[n - 2];
    return t;
  }();
  return table;
}

void require_index(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "Fock index must be non-negative", n);
}

}  // namespace

std::string_view to_string(SequenceKind kind) noexcept {
  switch (kind) {
    case SequenceKind::Linear: return "linear";
    case SequenceKind::ArikCoon: return "arik-coon";
    case SequenceKind::Symmetric: return "symmetric";
    case SequenceKind::Fibonacci: return "fibonacci";
  }
  return "unknown";
}

double fibonacci(int n) {
  require_index(n);
  if (n >= kFibonacciLimit) {
    throw Error(ErrorCode::InvalidArgument, "Fibonacci number overflows double precision", n);
  }
  return fibonacci_table()[static_cast<std::size_t>(n)];
}

std::complex<double> SpectrumSequence::box_complex(int n) const {
  require_index(n);
  using Kind = Deformation::Kind;
  const auto nd = static_cast<double>(n);
  switch (kind_) {
    case SequenceKind::Linear:
      return nd;
    case SequenceKind::Fibonacci:
      return fibonacci(n);
    case SequenceKind::ArikCoon:
      switch (deformation_.kind()) {
        case Kind::Classical: return nd;
        case Kind::RealQ: {
          // expm1 keeps the q -> 1 limit accurate.
          const double lambda = std::log(deformation_.real_value());
          return std::expm1(nd * lambda) / std::expm1(lambda);
        }
        case Kind::PhaseQ: {
          const auto q = deformation_.value();
          return (1.0 - std::pow(q, n)) / (1.0 - q);
        }
      }
      break;
    case SequenceKind::Symmetric:
      switch (deformation_.kind()) {
        case Kind::Classical: return nd;
        case Kind::RealQ: {
          const double lambda = std::log(deformation_.real_value());
          return std::sinh(nd * lambda) / std::sinh(lambda);
        }
        case Kind::PhaseQ: {
          const auto q = deformation_.value();
          const auto qn = std::polar(1.0, nd * deformation_.phase_angle());
          return (qn - 1.0 / qn) / (q - 1.0 / q);
        }
      }
      break;
  }
  return nd;
}

bool SpectrumSequence::self_conjugate() const noexcept {
  return !(kind_ == SequenceKind::ArikCoon && deformation_.kind() == Deformation::Kind::PhaseQ);
}

bool SpectrumSequence::bosonic() const noexcept {
  if (kind_ == SequenceKind::Linear) return true;
  if (kind_ == SequenceKind::Fibonacci) return false;
  return deformation_.kind() == Deformation::Kind::Classical;
}

bool SpectrumSequence::nondecreasing() const noexcept {
  if (kind_ == SequenceKind::Linear || kind_ == SequenceKind::Fibonacci) return true;
  return deformation_.kind() != Deformation::Kind::PhaseQ;
}

std::optional<int> SpectrumSequence::closure_order() const noexcept {
  if (kind_ != SequenceKind::Symmetric || deformation_.kind() != Deformation::Kind::PhaseQ) {
    return std::nullopt;
  }
  const double theta = deformation_.phase_angle();
  const auto m = static_cast<int>(std::lround(std::numbers::pi / theta));
  if (m < 2) return std::nullopt;
  if (std::abs(std::sin(m * theta)) > kSineZero) return std::nullopt;
  return m;
}

bool SpectrumSequence::vanishes(int n) const {
  require_index(n);
  if (kind_ == SequenceKind::Symmetric && deformation_.kind() == Deformation::Kind::PhaseQ) {
    return std::abs(std::sin(n * deformation_.phase_angle())) <= kSineZero;
  }
  if (kind_ == SequenceKind::ArikCoon && deformation_.kind() == Deformation::Kind::PhaseQ) {
    return std::abs(std::sin(0.5 * n * deformation_.phase_angle())) <= kSineZero;
  }
  return std::abs(box_complex(n)) <= 1e-14 * std::max(1, n);
}

double box_value(const SpectrumSequence& sequence, int n) {
  require_index(n);
  const auto& d = sequence.deformation();
  if (sequence.kind() == SequenceKind::Symmetric && d.kind() == Deformation::Kind::PhaseQ) {
    const double theta = d.phase_angle();
    const double denom = std::sin(theta);
    if (std::abs(denom) < 1e-300) {
      throw Error(ErrorCode::RootOfUnity, "sin(theta) = 0 makes the symmetric box undefined", n);
    }
    return std::sin(n * theta) / denom;
  }
  const auto value = sequence.box_complex(n);
  if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real()))) {
    throw Error(ErrorCode::NonRealValue,
                std::string("box value of the ") + std::string(to_string(sequence.kind())) +
                    " sequence is not real for this deformation",
                n);
  }
  return value.real();
}

}  // namespace qdeform
