#include "qdeform/io.hpp"

#include <array>
#include <charconv>

namespace qdeform::io {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return {buf.data(), res.ptr};
}

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json vector_json(const Eigen::VectorXcd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v[i]));
  return out;
}

Json matrix_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Deformation& deformation) {
  Json out;
  switch (deformation.kind()) {
    case Deformation::Kind::Classical:
      out["kind"] = "classical";
      break;
    case Deformation::Kind::RealQ:
      out["kind"] = "real";
      break;
    case Deformation::Kind::PhaseQ:
      out["kind"] = "phase";
      out["theta"] = deformation.phase_angle();
      break;
  }
  out["q"] = complex_json(deformation.value());
  return out;
}

Json to_json(const SpectrumSequence& sequence) {
  Json out;
  out["kind"] = std::string(to_string(sequence.kind()));
  out["deformation"] = to_json(sequence.deformation());
  return out;
}

Json to_json(const FockOperatorSet& ops) {
  Json out;
  out["sequence"] = to_json(ops.sequence);
  out["realization"] = ops.realization == Realization::Hermitian ? "hermitian" : "algebraic";
  out["n_max"] = ops.n_max;
  out["a"] = matrix_json(ops.a);
  out["a_dag"] = matrix_json(ops.a_dag);
  out["delta"] = matrix_json(ops.delta);
  out["delta_prime"] = matrix_json(ops.delta_prime);
  out["number"] = matrix_json(ops.number);
  return out;
}

Json to_json(const QMutatorReport& report) {
  Json out;
  out["qmutator"] = report.qmutator;
  out["a_delta"] = report.a_delta;
  out["delta_adag"] = report.delta_adag;
  out["max"] = report.max();
  return out;
}

Json to_json(const CoherentState& state) {
  Json out;
  out["z"] = complex_json(state.z);
  out["n_max"] = state.n_max;
  out["norm_const"] = state.norm_const;
  out["coeffs"] = vector_json(state.normalized());
  out["tail_bound"] = state.tail_bound;
  out["exact"] = state.exact;
  return out;
}

Json to_json(const MomentReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json row;
    row["n"] = e.n;
    row["achieved"] = e.achieved;
    row["target"] = e.target;
    row["rel_error"] = e.rel_error;
    entries.push_back(std::move(row));
  }
  Json out;
  out["entries"] = std::move(entries);
  out["max_rel_error"] = report.max_rel_error();
  return out;
}

Json to_json(const OvercompletenessReport& report) {
  Json out;
  out["z"] = complex_json(report.z);
  out["n_levels"] = report.n_levels;
  out["deviation"] = report.deviation;
  out["moment_error"] = report.moment_error;
  out["expanded"] = vector_json(report.expanded);
  out["direct"] = vector_json(report.direct);
  return out;
}

Json to_json(const WeightTable& table) {
  Json out;
  out["sequence"] = to_json(table.sequence);
  out["support"] = table.support == Support::FullLine ? "full-line" : "half-line";
  out["origin"] = table.origin;
  out["points"] = table.grid.size();
  out["x_min"] = table.grid.empty() ? 0.0 : table.grid.front();
  out["x_max"] = table.grid.empty() ? 0.0 : table.grid.back();
  out["epsilon"] = table.epsilon;
  out["epsilon_ladder"] = table.epsilon_ladder;
  out["y_cutoff"] = table.y_cutoff;
  out["series_order"] = table.series_order;
  out["imag_residue"] = table.imag_residue;
  if (table.moment_report) out["moment_report"] = to_json(*table.moment_report);
  return out;
}

void write_weight_csv(std::ostream& out, const WeightTable& table) {
  out << "x,W_tilde,epsilon\n";
  const std::string eps = format_double(table.epsilon);
  for (std::size_t j = 0; j < table.grid.size(); ++j) {
    out << format_double(table.grid[j]) << ',' << format_double(static_cast<double>(table.values[j])) << ','
        << eps << '\n';
  }
}

}  // namespace qdeform::io
