#include "csqs/kernels.hpp"

#include "csqs/errors.hpp"

namespace csqs::kernels {

std::vector<double> simpson_weights(int count, double step) {
  if (count < 3 || count % 2 == 0) throw InvalidParameters("simpson_weights: count must be odd and >= 3");
  std::vector<double> w(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double c = (k == 0 || k == count - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    w[k] = c * step / 3.0;
  }
  return w;
}

namespace detail {

Integrals combine_rows(std::span<const double> wx, std::span<const double> total, std::span<const double> abs,
                       std::span<const double> negative) {
  numeric::CompensatedSum s_total, s_abs, s_neg;
  for (std::size_t i = 0; i < wx.size(); ++i) {
    s_total.add(wx[i] * total[i]);
    s_abs.add(wx[i] * abs[i]);
    s_neg.add(wx[i] * negative[i]);
  }
  return {s_total.value(), s_abs.value(), s_neg.value()};
}

}  // namespace detail

namespace {

void check_size(const PhaseGrid& grid, std::span<const double> values) {
  grid.validate();
  if (values.size() != grid.size()) throw InvalidParameters("simpson: value count does not match grid");
}

}  // namespace

Integrals simpson_serial(const PhaseGrid& grid, std::span<const double> values) {
  check_size(grid, values);
  const auto wx = simpson_weights(grid.nx, grid.dx());
  const auto wy = simpson_weights(grid.ny, grid.dy());
  std::vector<double> total(grid.nx), abs(grid.nx), neg(grid.nx);
  for (int i = 0; i < grid.nx; ++i) {
    detail::row_integrals(values.subspan(static_cast<std::size_t>(i) * grid.ny, grid.ny), wy, &total[i], &abs[i],
                          &neg[i]);
  }
  return detail::combine_rows(wx, total, abs, neg);
}

Integrals simpson_omp(const PhaseGrid& grid, std::span<const double> values, int threads) {
  check_size(grid, values);
  const auto wx = simpson_weights(grid.nx, grid.dx());
  const auto wy = simpson_weights(grid.ny, grid.dy());
  std::vector<double> total(grid.nx), abs(grid.nx), neg(grid.nx);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (int i = 0; i < grid.nx; ++i) {
    detail::row_integrals(values.subspan(static_cast<std::size_t>(i) * grid.ny, grid.ny), wy, &total[i], &abs[i],
                          &neg[i]);
  }
  return detail::combine_rows(wx, total, abs, neg);
}

}  // namespace csqs::kernels
