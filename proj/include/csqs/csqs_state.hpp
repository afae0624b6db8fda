#pragma once

#include <complex>

#include "csqs/fock.hpp"
#include "csqs/numeric.hpp"

namespace csqs {

/// Displacement alpha and superposition weights (t, r), t^2 + r^2 = 1.
/// The state is N (t a + r a^dag)|alpha>.
class StateParams {
 public:
  StateParams(cplx alpha, double t, double r);

  /// r = +sqrt(1 - t^2), or the negative root when negative_r is set.
  static StateParams from_t(cplx alpha, double t, bool negative_r = false);
  /// t = +sqrt(1 - r^2), or the negative root when negative_t is set.
  static StateParams from_r(cplx alpha, double r, bool negative_t = false);

  cplx alpha() const { return alpha_; }
  double t() const { return t_; }
  double r() const { return r_; }

 private:
  cplx alpha_;
  double t_;
  double r_;
};

/// |alpha|^2 + r t (alpha^2 + alpha*^2) + r^2, the squared norm of (t a + r a^dag)|alpha>.
double normalization_argument(const StateParams& p);

class NormalizedCsqs {
 public:
  const StateParams& params() const { return params_; }
  double n_const() const { return n_const_; }
  cplx alpha() const { return params_.alpha(); }
  double t() const { return params_.t(); }
  double r() const { return params_.r(); }
  /// r == 0: the state is the coherent state |alpha> (up to a phase), including
  /// the vacuum at alpha = 0 where n_const is infinite. Closed forms take an
  /// explicit branch here instead of multiplying N^2 by |alpha|^2.
  bool coherent() const { return params_.r() == 0.0; }

 private:
  NormalizedCsqs(StateParams p, double n) : params_(p), n_const_(n) {}
  friend NormalizedCsqs normalize(const StateParams& params, double eps);

  StateParams params_;
  double n_const_;
};

/// Throws DegenerateStateError when the normalization argument is <= eps and r != 0.
NormalizedCsqs normalize(const StateParams& params, double eps = 1e-10);

/// Squared amplitude the CSQS holds above `cutoff`.
double csqs_tail_mass(const NormalizedCsqs& state, int cutoff);

/// Smallest cutoff whose CSQS tail is below eps_tail, plus headroom.
int csqs_cutoff(const NormalizedCsqs& state, int extra_excitations = 2, double eps_tail = kDefaultTailEps);

/// Number-basis amplitudes psi_n = N e^{-|a|^2/2} (t a . a^n/sqrt(n!) + r sqrt(n) a^{n-1}/sqrt((n-1)!)).
/// Throws TailMassError if the truncation discards more than eps_tail.
FockVector csqs_fock(const NormalizedCsqs& state, int cutoff, double eps_tail = kDefaultTailEps);

/// Closed-form <a^dag^m a^n>. m = n = 0 returns 1; |alpha| < 1e-50 falls back to
/// the ladder oracle because the alpha^{*m-1} alpha^{n-1} prefactor degenerates.
cplx moment_closed(const NormalizedCsqs& state, int m, int n);

}  // namespace csqs
