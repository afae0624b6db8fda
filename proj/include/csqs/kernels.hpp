#pragma once

// Data-parallel phase-space kernels. Each kernel has a serial reference
// implementation and an OpenMP one; both perform identical floating-point
// operations per grid row, so their outputs are bit-identical for any worker count.

#include <cmath>
#include <span>
#include <vector>

#include <omp.h>

#include "csqs/grid.hpp"
#include "csqs/numeric.hpp"

namespace csqs::kernels {

/// Integrals of f, |f| and max(-f, 0) from one pass over the samples.
struct Integrals {
  double total = 0.0;
  double abs = 0.0;
  double negative = 0.0;
};

/// Composite Simpson weights (1, 4, 2, ..., 4, 1) * h / 3 for an odd count.
std::vector<double> simpson_weights(int count, double step);

/// out[i * ny + j] = f(x_i, y_j)
template <class F>
void fill_serial(const PhaseGrid& grid, std::span<double> out, F&& f) {
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x(i);
    double* row = out.data() + static_cast<std::size_t>(i) * grid.ny;
    for (int j = 0; j < grid.ny; ++j) row[j] = f(x, grid.y(j));
  }
}

template <class F>
void fill_omp(const PhaseGrid& grid, std::span<double> out, F&& f, int threads) {
#pragma omp parallel for schedule(static) num_threads(threads)
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x(i);
    double* row = out.data() + static_cast<std::size_t>(i) * grid.ny;
    for (int j = 0; j < grid.ny; ++j) row[j] = f(x, grid.y(j));
  }
}

namespace detail {

inline void row_integrals(std::span<const double> row, std::span<const double> wy, double* total, double* abs,
                          double* negative) {
  numeric::CompensatedSum s_total, s_abs, s_neg;
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double v = row[j];
    s_total.add(wy[j] * v);
    s_abs.add(wy[j] * std::abs(v));
    if (v < 0.0) s_neg.add(-wy[j] * v);
  }
  *total = s_total.value();
  *abs = s_abs.value();
  *negative = s_neg.value();
}

Integrals combine_rows(std::span<const double> wx, std::span<const double> total, std::span<const double> abs,
                       std::span<const double> negative);

}  // namespace detail

/// Row sums are computed independently then folded in row order.
Integrals simpson_serial(const PhaseGrid& grid, std::span<const double> values);
Integrals simpson_omp(const PhaseGrid& grid, std::span<const double> values, int threads);

}  // namespace csqs::kernels
