#pragma once

// Truncated number-basis linear algebra for a single bosonic mode (plus the
// two-mode output of a 50:50 beam splitter). Everything here is brute force on
// purpose: it is the reference every closed-form expression is checked against.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "csqs/numeric.hpp"

namespace csqs {

inline constexpr double kDefaultTailEps = 1e-12;
inline constexpr double kDefaultPsdEps = 1e-10;
/// Tail bound for cutoffs feeding pointwise field oracles. Their truncation error
/// scales with the square root of the discarded mass, not with the mass itself.
inline constexpr double kFieldTailEps = 1e-24;

/// Amplitudes c_0..c_D over |0>..|D>. Not necessarily normalized (ladder outputs are not).
class FockVector {
 public:
  explicit FockVector(std::vector<cplx> amplitudes);

  static FockVector basis(int n, int cutoff);

  int cutoff() const { return static_cast<int>(amps_.size()) - 1; }
  std::span<const cplx> amplitudes() const { return amps_; }
  cplx operator[](int n) const { return amps_[static_cast<std::size_t>(n)]; }

  double norm_squared() const;
  /// <this|other>
  cplx inner(const FockVector& other) const;
  FockVector scaled(cplx factor) const;
  /// Squared mass held in the top `levels` number states.
  double top_mass(int levels) const;

 private:
  std::vector<cplx> amps_;
};

/// Amplitudes w(j, k) of sum_{jk} w(j,k)|j,k>, stored dense with j + k <= cutoff.
class TwoModeVector {
 public:
  explicit TwoModeVector(Eigen::MatrixXcd amplitudes);

  int cutoff() const { return static_cast<int>(amps_.rows()) - 1; }
  const Eigen::MatrixXcd& amplitudes() const { return amps_; }
  double norm_squared() const { return amps_.squaredNorm(); }

 private:
  Eigen::MatrixXcd amps_;
};

/// Hermitian (D+1)x(D+1) density matrix. Hermiticity holds exactly: the
/// constructor mirrors the upper triangle into the lower one.
class DensityOperator {
 public:
  explicit DensityOperator(const Eigen::MatrixXcd& matrix);

  static DensityOperator pure(const FockVector& v);

  int cutoff() const { return static_cast<int>(rho_.rows()) - 1; }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  double trace() const { return rho_.trace().real(); }
  double min_eigenvalue() const;

  /// Throws TailMassError if the trace falls outside [1 - eps_tail, 1 + eps_tail]
  /// or an eigenvalue is below -eps_psd.
  void validate(double eps_tail = kDefaultTailEps, double eps_psd = kDefaultPsdEps) const;

 private:
  Eigen::MatrixXcd rho_;
};

/// Smallest D whose Poisson tail (mean |alpha|^2) is below eps_tail, plus headroom.
int choose_cutoff(cplx alpha, int extra_excitations, double eps_tail = kDefaultTailEps);

/// e^{-|a|^2/2} a^n / sqrt(n!) for n <= cutoff; throws TailMassError if the
/// discarded Poisson tail exceeds eps_tail.
FockVector coherent_fock(cplx alpha, int cutoff, double eps_tail = kDefaultTailEps);

FockVector apply_annihilation(const FockVector& v);

/// Keeps the cutoff. Throws TailMassError when the amplitude pushed past the
/// top level would exceed eps_tail (relative to the norm of v).
FockVector apply_creation(const FockVector& v, double eps_tail = kDefaultTailEps);

/// v (x) |0> through a 50:50 splitter: |n,0> -> 2^{-n/2} sum_j sqrt(C(n,j)) |j, n-j>.
TwoModeVector beam_splitter_50_50(const FockVector& v);

/// rho_B = Tr_A |w><w|.
DensityOperator partial_trace_first(const TwoModeVector& w);

double purity(const DensityOperator& rho);

/// <a^dag^m a^n> as the inner product <a^m v | a^n v>. Requires the top m + n
/// levels of v to be empty to within eps_tail.
cplx moment_oracle(const FockVector& v, int m, int n, double eps_tail = kDefaultTailEps);

/// Amplitude-damping channel with transmissivity e^{-2 kappa_t}:
/// rho -> sum_k K_k rho K_k^dag. Maps the truncated space into itself, so the
/// trace is preserved up to rounding.
DensityOperator amplitude_damping_kraus(const DensityOperator& rho, double kappa_t);

}  // namespace csqs
