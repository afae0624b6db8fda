#pragma once

#include "csqs/csqs_state.hpp"
#include "csqs/fock.hpp"
#include "csqs/phase_space.hpp"

namespace csqs {

/// Photon loss after rescaled time kappa_t; T = 1 - e^{-2 kappa_t} is the lost fraction.
class LossParams {
 public:
  /// Throws InvalidParameters for negative or non-finite kappa_t.
  static LossParams from_kappa_t(double kappa_t);

  double kappa_t() const { return kappa_t_; }
  double T() const { return loss_; }
  double transmissivity() const { return 1.0 - loss_; }

 private:
  LossParams(double kt, double loss) : kappa_t_(kt), loss_(loss) {}
  double kappa_t_;
  double loss_;
};

/// Evolved Wigner function with eta = zeta e^{-kt} + T alpha:
/// (2N^2/pi) exp[(2/T)(|eta|^2 - |zeta|^2 - T|alpha|^2)]
///   x [t^2|alpha|^2 + r^2(-1 + 2T + |2 eta - alpha|^2) + 2 r t Re((2 eta - alpha) alpha)].
/// For T < 1e-6 the exponent is evaluated in its cancelled form -2|zeta - alpha e^{-kt}|^2;
/// T < 1e-12 (or kappa_t == 0) returns the unevolved wigner_closed.
double lossy_wigner_closed(const NormalizedCsqs& state, const LossParams& loss, cplx zeta);

/// Kraus-evolved |psi><psi| at the given cutoff.
DensityOperator lossy_density(const NormalizedCsqs& state, const LossParams& loss, int cutoff);

/// wigner_oracle(amplitude_damping_kraus(|psi><psi|, kappa_t), zeta).
double lossy_wigner_oracle(const NormalizedCsqs& state, const LossParams& loss, cplx zeta, int cutoff);

/// Pointwise lossy_wigner_closed. Throws GridError if the integral misses 1 by more than eps_grid.
WignerField lossy_field(const NormalizedCsqs& state, const LossParams& loss, const PhaseGrid& grid,
                        int threads = 0, double eps_grid = kDefaultGridEps);

}  // namespace csqs
