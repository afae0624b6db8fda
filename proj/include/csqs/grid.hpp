#pragma once

#include <complex>

#include "csqs/numeric.hpp"

namespace csqs {

/// Rectangular sample lattice over Re(gamma) x Im(gamma). Point counts are odd
/// so composite Simpson weights line up with both edges.
struct PhaseGrid {
  double x_min = -6.0;
  double x_max = 6.0;
  double y_min = -6.0;
  double y_max = 6.0;
  int nx = 401;
  int ny = 401;

  /// Throws InvalidParameters on empty ranges or even/too-small counts.
  void validate() const;

  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dy() const { return (y_max - y_min) / (ny - 1); }
  double x(int i) const { return x_min + i * dx(); }
  double y(int j) const { return y_min + j * dy(); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }

  /// [-6, 6]^2 at 401 x 401.
  static PhaseGrid default_grid() { return {}; }
  static PhaseGrid centered(cplx center, double half_width, int points);
  /// Default grid, re-centred on alpha (half-width 6) once |alpha| > 2.
  static PhaseGrid for_displacement(cplx alpha);

  /// True if alpha sits at least `margin` inside every edge.
  bool covers(cplx alpha, double margin) const;
};

}  // namespace csqs
