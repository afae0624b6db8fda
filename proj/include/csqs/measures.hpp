#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "csqs/csqs_state.hpp"

namespace csqs {

/// Quadrature covariance in the vacuum = identity convention, with
/// p = (a + a^dag)/sqrt2 and q = (a - a^dag)/(i sqrt2).
struct CovarianceMatrix {
  double s_pp = 1.0;
  double s_qq = 1.0;
  double s_pq = 0.0;

  double determinant() const { return s_pp * s_qq - s_pq * s_pq; }
};

/// Builds sigma from <a>, <a^2> and <a^dag a>.
CovarianceMatrix covariance_from_moments(cplx mean_a, cplx mean_a2, double mean_n);

enum class MeasureName { LE, N_rho, WLN, delta_NG };

std::string_view to_string(MeasureName name);

struct MeasureReport {
  MeasureName name = MeasureName::LE;
  std::optional<double> closed_value;
  std::optional<double> oracle_value;
  std::optional<double> delta;  // |closed - oracle| when both are present
  std::string method_notes;

  static MeasureReport make(MeasureName name, std::optional<double> closed, std::optional<double> oracle,
                            std::string notes);
};

// ---- linear entropy potential (50:50 splitter with vacuum, 1 - Tr rho_B^2) ----

/// Closed form 1 - N^4 [ t^4|a|^4 + t^3 r {2a^2|a|^2 + 2a*^2|a|^2}
///   + t^2 r^2 {2|a|^2(1 + 2|a|^2) + a^4 + a*^4} + t r^3 {2a^2(1 + |a|^2) + 2a*^2(1 + |a|^2)}
///   + r^4 (1 + 4|a|^2 + 2|a|^4)/2 ].
double linear_entropy_closed(const NormalizedCsqs& state);

/// Variant with r^4 (1 + 5|a|^2 + 2|a|^4)/2 in the last term. It disagrees with the
/// beam-splitter computation and can go negative; kept for comparison reports only.
double linear_entropy_uncorrected(const NormalizedCsqs& state);

/// 1 - purity(partial_trace_first(beam_splitter_50_50(csqs_fock(state, cutoff)))).
double linear_entropy_oracle(const NormalizedCsqs& state, int cutoff);

// ---- skew-information measure 1/2 + <a^dag a> - |<a>|^2 ----

/// alpha == 0 is evaluated through the ladder oracle (see moment_closed).
double skew_closed(const NormalizedCsqs& state);
double skew_oracle(const NormalizedCsqs& state, int cutoff);

// ---- covariance and relative entropy of non-Gaussianity ----

CovarianceMatrix covariance(const NormalizedCsqs& state);
CovarianceMatrix covariance_oracle(const NormalizedCsqs& state, int cutoff);

/// h(x) = ((x+1)/2) log2((x+1)/2) - ((x-1)/2) log2((x-1)/2), continuous at h(1) = 0.
double gaussian_entropy(double x);

/// h(sqrt(det sigma)). Throws CovarianceError if det sigma < 1 - 1e-6.
double rel_entropy_ng(const CovarianceMatrix& sigma);
double rel_entropy_ng(const NormalizedCsqs& state);

}  // namespace csqs
