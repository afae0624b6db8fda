#include "csqs/csqs_state.hpp"

#include <cmath>
#include <string>

#include "csqs/errors.hpp"

namespace csqs {

namespace {

constexpr double kUnitCircleTol = 1e-12;
constexpr double kTinyAlpha = 1e-50;

cplx ipow(cplx z, int k) {
  if (k < 0) return 1.0 / ipow(z, -k);
  cplx acc = 1.0;
  for (int i = 0; i < k; ++i) acc *= z;
  return acc;
}

double complementary_weight(double w, const char* name) {
  if (!std::isfinite(w) || std::abs(w) > 1.0 + kUnitCircleTol) {
    throw InvalidParameters(std::string("superposition weight ") + name + " must lie in [-1, 1]");
  }
  return std::sqrt(std::max(0.0, 1.0 - w * w));
}

}  // namespace

StateParams::StateParams(cplx alpha, double t, double r) : alpha_(alpha), t_(t), r_(r) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) || !std::isfinite(t) || !std::isfinite(r)) {
    throw InvalidParameters("state parameters must be finite");
  }
  if (std::abs(t * t + r * r - 1.0) > kUnitCircleTol) {
    throw InvalidParameters("superposition weights must satisfy t^2 + r^2 = 1 (got t=" + std::to_string(t) +
                            ", r=" + std::to_string(r) + ")");
  }
}

StateParams StateParams::from_t(cplx alpha, double t, bool negative_r) {
  const double r = complementary_weight(t, "t");
  return StateParams(alpha, t, negative_r ? -r : r);
}

StateParams StateParams::from_r(cplx alpha, double r, bool negative_t) {
  const double t = complementary_weight(r, "r");
  return StateParams(alpha, negative_t ? -t : t, r);
}

double normalization_argument(const StateParams& p) {
  const cplx a = p.alpha();
  return std::norm(a) + p.r() * p.t() * 2.0 * (a * a).real() + p.r() * p.r();
}

NormalizedCsqs normalize(const StateParams& params, double eps) {
  if (params.r() == 0.0) return NormalizedCsqs(params, 1.0 / std::abs(params.alpha()));
  const double arg = normalization_argument(params);
  if (!(arg > eps)) {
    throw DegenerateStateError("state is not normalizable: |alpha|^2 + rt(alpha^2 + alpha*^2) + r^2 = " +
                               std::to_string(arg));
  }
  return NormalizedCsqs(params, 1.0 / std::sqrt(arg));
}

double csqs_tail_mass(const NormalizedCsqs& state, int cutoff) {
  const cplx a = state.alpha();
  const double mu = std::norm(a);
  if (state.coherent()) return numeric::poisson_tail(mu, cutoff);
  const double n2 = state.n_const() * state.n_const();
  if (mu == 0.0) {
    // Only |1> is populated.
    return cutoff >= 1 ? 0.0 : n2 * state.r() * state.r();
  }
  // |psi_n|^2 = N^2 e^{-mu} mu^{n-1} / n! |t a^2 + r n|^2 for n >= 1.
  const double log_mu = std::log(mu);
  const int n0 = cutoff + 1;
  double log_p = -mu - log_mu;
  for (int k = 1; k <= n0; ++k) log_p += log_mu - std::log(static_cast<double>(k));

  numeric::CompensatedSum sum;
  for (int n = n0;; ++n) {
    const double term = n2 * std::exp(log_p) * std::norm(state.t() * a * a + state.r() * static_cast<double>(n));
    sum.add(term);
    if (n > 2.0 * mu + 10.0 && term <= 1e-20 * sum.value()) break;
    log_p += log_mu - std::log(static_cast<double>(n + 1));
  }
  return sum.value();
}

int csqs_cutoff(const NormalizedCsqs& state, int extra_excitations, double eps_tail) {
  int d = choose_cutoff(state.alpha(), 0, eps_tail);
  while (csqs_tail_mass(state, d) >= eps_tail) ++d;
  return std::max(1, d + extra_excitations);
}

FockVector csqs_fock(const NormalizedCsqs& state, int cutoff, double eps_tail) {
  if (cutoff < 1) throw InvalidParameters("csqs_fock: cutoff must be at least 1");
  const double tail = csqs_tail_mass(state, cutoff);
  if (tail > eps_tail) {
    throw TailMassError("csqs_fock: cutoff " + std::to_string(cutoff) + " discards tail mass " + std::to_string(tail));
  }
  const cplx a = state.alpha();
  const double nc = state.n_const();
  const double t = state.t();
  const double r = state.r();

  // Coherent coefficients e^{-|a|^2/2} a^n / sqrt(n!) by incremental ratio.
  std::vector<cplx> coh(static_cast<std::size_t>(cutoff) + 1);
  coh[0] = std::exp(-0.5 * std::norm(a));
  for (int n = 1; n <= cutoff; ++n) coh[n] = coh[n - 1] * a / std::sqrt(static_cast<double>(n));

  std::vector<cplx> amps(static_cast<std::size_t>(cutoff) + 1);
  if (state.coherent()) {
    // t a|a> / |a| = (t a / |a|)|a>
    const cplx phase = std::abs(a) > 0.0 ? t * a / std::abs(a) : cplx(t);
    for (int n = 0; n <= cutoff; ++n) amps[n] = phase * coh[n];
    return FockVector(std::move(amps));
  }
  amps[0] = nc * t * a * coh[0];
  for (int n = 1; n <= cutoff; ++n) {
    amps[n] = nc * (t * a * coh[n] + r * std::sqrt(static_cast<double>(n)) * coh[n - 1]);
  }
  return FockVector(std::move(amps));
}

cplx moment_closed(const NormalizedCsqs& state, int m, int n) {
  if (m < 0 || n < 0) throw InvalidParameters("moment_closed: negative order");
  if (m == 0 && n == 0) return 1.0;

  const cplx a = state.alpha();
  if (state.coherent()) return ipow(std::conj(a), m) * ipow(a, n);
  if (std::abs(a) < kTinyAlpha) {
    const int cutoff = csqs_cutoff(state, m + n + 2);
    return moment_oracle(csqs_fock(state, cutoff), m, n);
  }

  const cplx ac = std::conj(a);
  const double A = std::norm(a);
  const double t = state.t();
  const double r = state.r();
  const double nc2 = state.n_const() * state.n_const();
  const double dm = m;
  const double dn = n;

  const cplx bracket = A * A + r * t * ((dm + A) * a * a + (dn + A) * ac * ac) + r * r * (dm * dn + (dm + dn + 1.0) * A);
  return nc2 * ipow(ac, m - 1) * ipow(a, n - 1) * bracket;
}

}  // namespace csqs
