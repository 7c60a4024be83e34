#include "qdeform/quadrature.hpp"

namespace qdeform::quadrature {

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 2 || !(hi > lo)) {
    throw Error(ErrorCode::InvalidArgument, "grid needs at least two points and hi > lo");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double h = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = lo + h * i;
  grid.back() = hi;
  return grid;
}

}  // namespace qdeform::quadrature
