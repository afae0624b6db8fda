#include "csqs/grid.hpp"

#include <cmath>
#include <string>

#include "csqs/errors.hpp"

namespace csqs {

void PhaseGrid::validate() const {
  if (!(x_min < x_max) || !(y_min < y_max)) {
    throw InvalidParameters("phase grid: bounds must satisfy min < max");
  }
  if (nx < 3 || ny < 3 || nx % 2 == 0 || ny % 2 == 0) {
    throw InvalidParameters("phase grid: point counts must be odd and >= 3 (got " + std::to_string(nx) + "x" +
                            std::to_string(ny) + ")");
  }
}

PhaseGrid PhaseGrid::centered(cplx center, double half_width, int points) {
  PhaseGrid g;
  g.x_min = center.real() - half_width;
  g.x_max = center.real() + half_width;
  g.y_min = center.imag() - half_width;
  g.y_max = center.imag() + half_width;
  g.nx = points;
  g.ny = points;
  g.validate();
  return g;
}

PhaseGrid PhaseGrid::for_displacement(cplx alpha) {
  if (std::abs(alpha) > 2.0) return centered(alpha, 6.0, 401);
  return default_grid();
}

bool PhaseGrid::covers(cplx alpha, double margin) const {
  return alpha.real() - margin >= x_min && alpha.real() + margin <= x_max && alpha.imag() - margin >= y_min &&
         alpha.imag() + margin <= y_max;
}

}  // namespace csqs
