#pragma once

#include <complex>
#include <ostream>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qdeform/bargmann.hpp"
#include "qdeform/coherent.hpp"
#include "qdeform/deformation.hpp"
#include "qdeform/fock.hpp"
#include "qdeform/measure.hpp"
#include "qdeform/sequence.hpp"

namespace qdeform::io {

using Json = nlohmann::ordered_json;

/// Shortest decimal that round-trips (at most 17 significant digits).
std::string format_double(double value);

Json complex_json(std::complex<double> z);
Json vector_json(const Eigen::VectorXcd& v);
Json matrix_json(const Eigen::MatrixXcd& m);  ///< row-major [re, im] pairs

Json to_json(const Deformation& deformation);
Json to_json(const SpectrumSequence& sequence);
Json to_json(const FockOperatorSet& ops);
Json to_json(const QMutatorReport& report);
Json to_json(const CoherentState& state);
Json to_json(const MomentReport& report);
Json to_json(const OvercompletenessReport& report);

/// Table metadata and moment report; values go to CSV.
Json to_json(const WeightTable& table);

/// Header "x,W_tilde,epsilon", one row per grid point.
void write_weight_csv(std::ostream& out, const WeightTable& table);

}  // namespace qdeform::io
