#include "csqs/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "csqs/errors.hpp"
#include "csqs/kernels.hpp"
#include "csqs/parallel.hpp"

namespace csqs {

namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;
constexpr double kImagResidueTol = 1e-10;

}  // namespace

double WignerField::min_value() const { return *std::min_element(values.begin(), values.end()); }

double WignerField::max_value() const { return *std::max_element(values.begin(), values.end()); }

std::pair<int, int> WignerField::argmax() const {
  const auto it = std::max_element(values.begin(), values.end());
  const auto idx = static_cast<int>(it - values.begin());
  return {idx / grid.ny, idx % grid.ny};
}

WignerField make_field(const PhaseGrid& grid, std::vector<double> values, int threads) {
  grid.validate();
  for (double v : values) {
    if (!std::isfinite(v)) throw GridError("Wigner field contains non-finite samples");
  }
  const int workers = resolve_workers(threads);
  const auto integrals =
      workers == 1 ? kernels::simpson_serial(grid, values) : kernels::simpson_omp(grid, values, workers);
  WignerField field;
  field.grid = grid;
  field.values = std::move(values);
  field.total_integral = integrals.total;
  field.abs_integral = integrals.abs;
  field.negative_integral = integrals.negative;
  return field;
}

double wigner_closed(const NormalizedCsqs& state, cplx gamma) {
  const cplx a = state.alpha();
  if (state.coherent()) return kTwoOverPi * std::exp(-2.0 * std::norm(gamma - a));
  const double t = state.t();
  const double r = state.r();
  const double nc2 = state.n_const() * state.n_const();
  const double poly = std::norm(t * a + r * (2.0 * std::conj(gamma) - std::conj(a))) - r * r;
  return nc2 * poly * kTwoOverPi * std::exp(-2.0 * std::norm(gamma - a));
}

Eigen::MatrixXcd displacement_matrix(cplx beta, int cutoff) {
  const auto lf = numeric::log_factorials(cutoff);
  const double x = std::norm(beta);
  const double abs_beta = std::abs(beta);
  const double log_abs_beta = abs_beta > 0.0 ? std::log(abs_beta) : 0.0;
  const double phase = std::arg(beta);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  std::vector<double> lag(static_cast<std::size_t>(cutoff) + 1);
  for (int k = 0; k <= cutoff; ++k) {
    if (k > 0 && abs_beta == 0.0) break;
    // L_j^{(k)}(x), j = 0..cutoff-k, by the three-term recurrence in j.
    const int jmax = cutoff - k;
    lag[0] = 1.0;
    if (jmax >= 1) lag[1] = 1.0 + k - x;
    for (int j = 1; j < jmax; ++j) {
      lag[j + 1] = ((2.0 * j + 1.0 + k - x) * lag[j] - (j + k) * lag[j - 1]) / (j + 1.0);
    }
    const cplx up = std::polar(1.0, k * phase);  // (beta/|beta|)^k
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (int j = 0; j <= jmax; ++j) {
      const double mag = std::exp(0.5 * (lf[j] - lf[j + k]) + k * log_abs_beta - 0.5 * x) * lag[j];
      // <j+k|D|j> = sqrt(j!/(j+k)!) beta^k e^{-x/2} L_j^k(x)
      out(j + k, j) = mag * up;
      // <j|D|j+k> = sqrt(j!/(j+k)!) (-beta*)^k e^{-x/2} L_j^k(x)
      if (k > 0) out(j, j + k) = sign * mag * std::conj(up);
    }
  }
  return out;
}

double wigner_oracle(const DensityOperator& rho, cplx gamma, double eps_tail) {
  const double tr = rho.trace();
  if (std::abs(1.0 - tr) > eps_tail) {
    throw TailMassError("wigner_oracle: trace " + std::to_string(tr) + " indicates an inadequate cutoff");
  }
  const int d = rho.cutoff();
  const Eigen::MatrixXcd disp = displacement_matrix(2.0 * gamma, d);
  const Eigen::MatrixXcd& m = rho.matrix();
  // Tr[rho D(2g) P] = sum_{m,n} rho_{mn} (-1)^m <n|D(2g)|m>
  cplx acc = 0.0;
  for (int col = 0; col <= d; ++col) {
    const double parity = (col % 2 == 0) ? 1.0 : -1.0;
    cplx partial = 0.0;
    for (int row = 0; row <= d; ++row) partial += m(col, row) * disp(row, col);
    acc += parity * partial;
  }
  const cplx w = kTwoOverPi * acc;
  if (std::abs(w.imag()) > kImagResidueTol) {
    throw DomainError("wigner_oracle: imaginary residue " + std::to_string(w.imag()));
  }
  return w.real();
}

WignerField wigner_field(const NormalizedCsqs& state, const PhaseGrid& grid, int threads) {
  grid.validate();
  const int workers = resolve_workers(threads);
  std::vector<double> values(grid.size());
  auto f = [&state](double x, double y) { return wigner_closed(state, cplx(x, y)); };
  if (workers == 1) {
    kernels::fill_serial(grid, values, f);
  } else {
    kernels::fill_omp(grid, values, f, workers);
  }
  return make_field(grid, std::move(values), workers);
}

double negativity_volume(const WignerField& field) { return field.negative_integral; }

double wln_from_field(const WignerField& field, double eps_grid) {
  if (std::abs(field.total_integral - 1.0) > eps_grid) {
    throw GridError("Wigner integral " + std::to_string(field.total_integral) + " deviates from 1 by more than " +
                    std::to_string(eps_grid) + "; enlarge or refine the grid");
  }
  return std::log2(field.abs_integral);
}

double wln_numeric(const NormalizedCsqs& state, const PhaseGrid& grid, double eps_grid, int threads) {
  return wln_from_field(wigner_field(state, grid, threads), eps_grid);
}

double wln_reported_closed(const NormalizedCsqs& state) {
  const cplx a = state.alpha();
  if (a.imag() != 0.0) {
    throw DomainError("closed log-negativity expression is only defined for real alpha");
  }
  // N^2 t^2 a^2 = 1 on the coherent line.
  if (state.coherent()) return 0.0;
  const double k = a.real();
  const double s = state.t() + state.r();
  const double arg = state.n_const() * state.n_const() * (s * s * k * k - 5.0 * state.r() * state.r());
  if (!(arg > 0.0)) {
    throw DomainError("closed log-negativity expression has non-positive argument " + std::to_string(arg));
  }
  return std::log2(arg);
}

}  // namespace csqs
