#include "csqs/loss_channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "csqs/errors.hpp"
#include "csqs/kernels.hpp"
#include "csqs/parallel.hpp"

namespace csqs {

namespace {

constexpr double kUnevolvedBelow = 1e-12;
constexpr double kFusedExponentBelow = 1e-6;

}  // namespace

LossParams LossParams::from_kappa_t(double kappa_t) {
  if (!std::isfinite(kappa_t) || kappa_t < 0.0) {
    throw InvalidParameters("kappa_t must be finite and >= 0 (got " + std::to_string(kappa_t) + ")");
  }
  return LossParams(kappa_t, -std::expm1(-2.0 * kappa_t));
}

double lossy_wigner_closed(const NormalizedCsqs& state, const LossParams& loss, cplx zeta) {
  const double T = loss.T();
  if (loss.kappa_t() == 0.0 || T < kUnevolvedBelow) return wigner_closed(state, zeta);
  if (state.coherent()) {
    return 2.0 / std::numbers::pi * std::exp(-2.0 * std::norm(zeta - state.alpha() * std::exp(-loss.kappa_t())));
  }

  const cplx a = state.alpha();
  const double t = state.t();
  const double r = state.r();
  const double nc2 = state.n_const() * state.n_const();
  const double decay = std::exp(-loss.kappa_t());
  const cplx eta = zeta * decay + T * a;

  const double exponent = T < kFusedExponentBelow
                              ? -2.0 * std::norm(zeta - a * decay)
                              : (2.0 / T) * (std::norm(eta) - std::norm(zeta) - T * std::norm(a));
  const cplx shifted = 2.0 * eta - a;
  const double poly =
      t * t * std::norm(a) + r * r * (-1.0 + 2.0 * T + std::norm(shifted)) + r * t * 2.0 * (shifted * a).real();
  return 2.0 * nc2 / std::numbers::pi * std::exp(exponent) * poly;
}

DensityOperator lossy_density(const NormalizedCsqs& state, const LossParams& loss, int cutoff) {
  return amplitude_damping_kraus(DensityOperator::pure(csqs_fock(state, cutoff)), loss.kappa_t());
}

double lossy_wigner_oracle(const NormalizedCsqs& state, const LossParams& loss, cplx zeta, int cutoff) {
  return wigner_oracle(lossy_density(state, loss, cutoff), zeta);
}

WignerField lossy_field(const NormalizedCsqs& state, const LossParams& loss, const PhaseGrid& grid, int threads,
                        double eps_grid) {
  grid.validate();
  const int workers = resolve_workers(threads);
  std::vector<double> values(grid.size());
  auto f = [&](double x, double y) { return lossy_wigner_closed(state, loss, cplx(x, y)); };
  if (workers == 1) {
    kernels::fill_serial(grid, values, f);
  } else {
    kernels::fill_omp(grid, values, f, workers);
  }
  WignerField field = make_field(grid, std::move(values), workers);
  if (std::abs(field.total_integral - 1.0) > eps_grid) {
    throw GridError("lossy field integral " + std::to_string(field.total_integral) +
                    " deviates from 1; the grid does not cover the state");
  }
  return field;
}

}  // namespace csqs
