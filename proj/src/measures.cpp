#include "csqs/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "csqs/errors.hpp"
#include "csqs/fock.hpp"

namespace csqs {

namespace {

constexpr double kImagResidueTol = 1e-12;
constexpr double kCovarianceDetTol = 1e-6;

// N^{-4} Tr rho_B^2 with the r^4 |a|^2 coefficient left as a parameter.
double purity_bracket(const NormalizedCsqs& state, double r4_linear_coeff) {
  const cplx a = state.alpha();
  const cplx ac = std::conj(a);
  const double A = std::norm(a);
  const double t = state.t();
  const double r = state.r();
  const cplx a2 = a * a;
  const cplx ac2 = ac * ac;

  const cplx s = t * t * t * t * A * A                                           //
                 + t * t * t * r * (2.0 * a2 * A + 2.0 * ac2 * A)                //
                 + t * t * r * r * (2.0 * A * (1.0 + 2.0 * A) + a2 * a2 + ac2 * ac2)  //
                 + t * r * r * r * (2.0 * a2 * (1.0 + A) + 2.0 * ac2 * (1.0 + A))  //
                 + r * r * r * r * (1.0 + r4_linear_coeff * A + 2.0 * A * A) / 2.0;
  if (std::abs(s.imag()) > kImagResidueTol * std::max(1.0, std::abs(s.real()))) {
    throw DomainError("linear entropy: imaginary residue " + std::to_string(s.imag()));
  }
  return s.real();
}

}  // namespace

CovarianceMatrix covariance_from_moments(cplx mean_a, cplx mean_a2, double mean_n) {
  // <p> = sqrt2 Re<a>, <q> = sqrt2 Im<a>
  // <p^2> = Re<a^2> + <n> + 1/2, <q^2> = -Re<a^2> + <n> + 1/2, <pq + qp> = 2 Im<a^2>
  const double p = std::numbers::sqrt2 * mean_a.real();
  const double q = std::numbers::sqrt2 * mean_a.imag();
  const double p2 = mean_a2.real() + mean_n + 0.5;
  const double q2 = -mean_a2.real() + mean_n + 0.5;
  const double pq_sym = 2.0 * mean_a2.imag();
  CovarianceMatrix sigma;
  sigma.s_pp = 2.0 * (p2 - p * p);
  sigma.s_qq = 2.0 * (q2 - q * q);
  sigma.s_pq = pq_sym - 2.0 * p * q;
  return sigma;
}

std::string_view to_string(MeasureName name) {
  switch (name) {
    case MeasureName::LE:
      return "LE";
    case MeasureName::N_rho:
      return "N_rho";
    case MeasureName::WLN:
      return "WLN";
    case MeasureName::delta_NG:
      return "delta_NG";
  }
  return "unknown";
}

MeasureReport MeasureReport::make(MeasureName name, std::optional<double> closed, std::optional<double> oracle,
                                  std::string notes) {
  MeasureReport rep;
  rep.name = name;
  rep.closed_value = closed;
  rep.oracle_value = oracle;
  if (closed && oracle) rep.delta = std::abs(*closed - *oracle);
  rep.method_notes = std::move(notes);
  return rep;
}

double linear_entropy_closed(const NormalizedCsqs& state) {
  if (state.coherent()) return 0.0;
  const double n2 = state.n_const() * state.n_const();
  return 1.0 - n2 * n2 * purity_bracket(state, 4.0);
}

double linear_entropy_uncorrected(const NormalizedCsqs& state) {
  if (state.coherent()) return 0.0;
  const double n2 = state.n_const() * state.n_const();
  return 1.0 - n2 * n2 * purity_bracket(state, 5.0);
}

double linear_entropy_oracle(const NormalizedCsqs& state, int cutoff) {
  const FockVector psi = csqs_fock(state, cutoff);
  return 1.0 - purity(partial_trace_first(beam_splitter_50_50(psi)));
}

double skew_closed(const NormalizedCsqs& state) {
  if (state.coherent()) return 0.5;
  // moment_closed already routes alpha ~ 0 to the oracle.
  const double n = moment_closed(state, 1, 1).real();
  const cplx mean_a = moment_closed(state, 0, 1);
  return 0.5 + n - std::norm(mean_a);
}

double skew_oracle(const NormalizedCsqs& state, int cutoff) {
  const FockVector psi = csqs_fock(state, cutoff);
  const double n = moment_oracle(psi, 1, 1).real();
  const cplx mean_a = moment_oracle(psi, 0, 1);
  return 0.5 + n - std::norm(mean_a);
}

CovarianceMatrix covariance(const NormalizedCsqs& state) {
  if (state.coherent()) return {};
  return covariance_from_moments(moment_closed(state, 0, 1), moment_closed(state, 0, 2),
                                 moment_closed(state, 1, 1).real());
}

CovarianceMatrix covariance_oracle(const NormalizedCsqs& state, int cutoff) {
  const FockVector psi = csqs_fock(state, cutoff);
  return covariance_from_moments(moment_oracle(psi, 0, 1), moment_oracle(psi, 0, 2), moment_oracle(psi, 1, 1).real());
}

double gaussian_entropy(double x) {
  if (x < 1.0) throw DomainError("gaussian_entropy: argument below 1");
  const double up = 0.5 * (x + 1.0);
  const double down = 0.5 * (x - 1.0);
  const double h_down = down > 0.0 ? down * std::log2(down) : 0.0;
  return up * std::log2(up) - h_down;
}

double rel_entropy_ng(const CovarianceMatrix& sigma) {
  const double det = sigma.determinant();
  if (det < 1.0 - kCovarianceDetTol) {
    throw CovarianceError("covariance determinant " + std::to_string(det) + " violates the uncertainty bound");
  }
  // Rounding can leave sqrt(det) a hair below 1 after the check above.
  return gaussian_entropy(std::max(1.0, std::sqrt(det)));
}

double rel_entropy_ng(const NormalizedCsqs& state) { return rel_entropy_ng(covariance(state)); }

}  // namespace csqs
