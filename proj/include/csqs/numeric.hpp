#pragma once

#include <complex>
#include <span>
#include <vector>

namespace csqs {

using cplx = std::complex<double>;

namespace numeric {

/// ln(k!) for k = 0..n, by cumulative summation of logarithms.
std::vector<double> log_factorials(int n);

/// ln C(n, k) from a table produced by log_factorials (table size > n).
inline double log_binomial(std::span<const double> lf, int n, int k) {
  return lf[n] - lf[k] - lf[n - k];
}

/// Neumaier-compensated running sum. Order of add() calls fixes the result.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Poisson tail mass sum_{n > cutoff} e^{-mean} mean^n / n!.
double poisson_tail(double mean, int cutoff);

}  // namespace numeric
}  // namespace csqs
