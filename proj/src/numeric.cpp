#include "csqs/numeric.hpp"

#include <cmath>

namespace csqs::numeric {

std::vector<double> log_factorials(int n) {
  std::vector<double> lf(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 2; k <= n; ++k) {
    lf[k] = lf[k - 1] + std::log(static_cast<double>(k));
  }
  return lf;
}

double poisson_tail(double mean, int cutoff) {
  if (mean <= 0.0) return 0.0;
  const double log_mean = std::log(mean);
  const int n0 = cutoff + 1;
  double log_term = -mean;
  for (int k = 1; k <= n0; ++k) log_term += log_mean - std::log(static_cast<double>(k));

  CompensatedSum sum;
  for (int n = n0;; ++n) {
    const double term = std::exp(log_term);
    sum.add(term);
    // Past the mode the terms shrink at least geometrically.
    if (n > mean && term <= 1e-20 * sum.value()) break;
    log_term += log_mean - std::log(static_cast<double>(n + 1));
  }
  return sum.value();
}

}  // namespace csqs::numeric
