#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "qdeform/io.hpp"
#include "qdeform/quadrature.hpp"

using namespace qdeform;

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, std::numbers::pi, 1e-300, -2.5e17, 6.02214076e23}) {
    const auto s = io::format_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
    EXPECT_LE(s.size(), 24u);
  }
  EXPECT_EQ(io::format_double(0.5), "0.5");
}

TEST(Json, ComplexAndMatrixLayout) {
  const auto z = io::complex_json({1.5, -2.0});
  ASSERT_TRUE(z.is_array());
  EXPECT_EQ(z[0].get<double>(), 1.5);
  EXPECT_EQ(z[1].get<double>(), -2.0);

  Eigen::MatrixXcd m(2, 3);
  m << 1, 2, 3, 4, 5, std::complex<double>(6, 7);
  const auto j = io::matrix_json(m);
  ASSERT_EQ(j.size(), 2u);
  ASSERT_EQ(j[0].size(), 3u);
  EXPECT_EQ(j[1][2][1].get<double>(), 7.0);
}

TEST(Json, SequenceAndOperators) {
  const SpectrumSequence s{SequenceKind::Symmetric, Deformation::phase(std::numbers::pi / 6)};
  const auto ops = build_operators(s, 4, Realization::Hermitian);
  const auto j = io::to_json(ops);
  EXPECT_EQ(j["n_max"].get<int>(), 4);
  EXPECT_EQ(j["a"].size(), 4u);
  EXPECT_EQ(io::to_json(ops).dump(), j.dump());
}

TEST(Json, WeightTableCarriesMetadata) {
  auto t = bosonic_table(quadrature::uniform_grid(0.0, 40.0, 4001));
  t.moment_report = verify_moments(t, 3);
  const auto j = io::to_json(t);
  EXPECT_EQ(j["origin"].get<std::string>(), "closed-form");
  EXPECT_EQ(j["moment_report"]["entries"].size(), 4u);
}

TEST(Csv, HeaderAndRows) {
  const auto t = bosonic_table(quadrature::uniform_grid(0.0, 1.0, 3));
  std::ostringstream out;
  io::write_weight_csv(out, t);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,W_tilde,epsilon");
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  EXPECT_EQ(rows, 3);
}
