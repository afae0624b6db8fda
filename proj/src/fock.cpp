#include "csqs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csqs/errors.hpp"

namespace csqs {

FockVector::FockVector(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 2) {
    throw InvalidParameters("FockVector: cutoff must be at least 1");
  }
}

FockVector FockVector::basis(int n, int cutoff) {
  if (n < 0 || n > cutoff) {
    throw InvalidParameters("FockVector::basis: level " + std::to_string(n) +
                            " outside [0, " + std::to_string(cutoff) + "]");
  }
  std::vector<cplx> amps(static_cast<std::size_t>(cutoff) + 1, 0.0);
  amps[static_cast<std::size_t>(n)] = 1.0;
  return FockVector(std::move(amps));
}

double FockVector::norm_squared() const {
  numeric::CompensatedSum s;
  for (const auto& c : amps_) s.add(std::norm(c));
  return s.value();
}

cplx FockVector::inner(const FockVector& other) const {
  const std::size_t n = std::min(amps_.size(), other.amps_.size());
  cplx acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(amps_[i]) * other.amps_[i];
  return acc;
}

FockVector FockVector::scaled(cplx factor) const {
  std::vector<cplx> out(amps_);
  for (auto& c : out) c *= factor;
  return FockVector(std::move(out));
}

double FockVector::top_mass(int levels) const {
  double mass = 0.0;
  const int d = cutoff();
  for (int n = std::max(0, d - levels + 1); n <= d; ++n) mass += std::norm(amps_[static_cast<std::size_t>(n)]);
  return mass;
}

TwoModeVector::TwoModeVector(Eigen::MatrixXcd amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.rows() != amps_.cols() || amps_.rows() < 2) {
    throw InvalidParameters("TwoModeVector: expected a square amplitude array with cutoff >= 1");
  }
}

DensityOperator::DensityOperator(const Eigen::MatrixXcd& matrix) : rho_(matrix.rows(), matrix.cols()) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 2) {
    throw InvalidParameters("DensityOperator: expected a square matrix with cutoff >= 1");
  }
  const Eigen::Index d = matrix.rows();
  for (Eigen::Index m = 0; m < d; ++m) {
    rho_(m, m) = cplx(matrix(m, m).real(), 0.0);
    for (Eigen::Index n = m + 1; n < d; ++n) {
      rho_(m, n) = matrix(m, n);
      rho_(n, m) = std::conj(matrix(m, n));
    }
  }
}

DensityOperator DensityOperator::pure(const FockVector& v) {
  const int d = v.cutoff() + 1;
  Eigen::MatrixXcd rho(d, d);
  for (int m = 0; m < d; ++m) {
    for (int n = m; n < d; ++n) rho(m, n) = v[m] * std::conj(v[n]);
  }
  return DensityOperator(rho);
}

double DensityOperator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void DensityOperator::validate(double eps_tail, double eps_psd) const {
  const double tr = trace();
  if (tr < 1.0 - eps_tail || tr > 1.0 + eps_tail) {
    throw TailMassError("density operator trace " + std::to_string(tr) + " deviates from 1 by more than " +
                        std::to_string(eps_tail));
  }
  const double lmin = min_eigenvalue();
  if (lmin < -eps_psd) {
    throw TailMassError("density operator has eigenvalue " + std::to_string(lmin));
  }
}

int choose_cutoff(cplx alpha, int extra_excitations, double eps_tail) {
  if (!(eps_tail > 0.0)) throw InvalidParameters("choose_cutoff: eps_tail must be positive");
  if (extra_excitations < 0) throw InvalidParameters("choose_cutoff: negative headroom");
  const double mean = std::norm(alpha);
  int d = 0;
  while (numeric::poisson_tail(mean, d) >= eps_tail) ++d;
  return std::max(1, d + extra_excitations);
}

FockVector coherent_fock(cplx alpha, int cutoff, double eps_tail) {
  if (cutoff < 1) throw InvalidParameters("coherent_fock: cutoff must be at least 1");
  const double tail = numeric::poisson_tail(std::norm(alpha), cutoff);
  if (tail > eps_tail) {
    throw TailMassError("coherent_fock: cutoff " + std::to_string(cutoff) + " discards tail mass " +
                        std::to_string(tail) + " for |alpha|=" + std::to_string(std::abs(alpha)));
  }
  std::vector<cplx> amps(static_cast<std::size_t>(cutoff) + 1);
  amps[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) {
    amps[static_cast<std::size_t>(n)] = amps[static_cast<std::size_t>(n - 1)] * alpha / std::sqrt(static_cast<double>(n));
  }
  return FockVector(std::move(amps));
}

FockVector apply_annihilation(const FockVector& v) {
  const int d = v.cutoff();
  std::vector<cplx> out(static_cast<std::size_t>(d) + 1, 0.0);
  for (int n = 0; n < d; ++n) out[static_cast<std::size_t>(n)] = std::sqrt(static_cast<double>(n + 1)) * v[n + 1];
  return FockVector(std::move(out));
}

FockVector apply_creation(const FockVector& v, double eps_tail) {
  const int d = v.cutoff();
  const double dropped = (d + 1) * std::norm(v[d]);
  if (dropped > eps_tail * std::max(v.norm_squared(), 1e-300)) {
    throw TailMassError("apply_creation: insufficient headroom at cutoff " + std::to_string(d));
  }
  std::vector<cplx> out(static_cast<std::size_t>(d) + 1, 0.0);
  for (int n = 0; n < d; ++n) out[static_cast<std::size_t>(n) + 1] = std::sqrt(static_cast<double>(n + 1)) * v[n];
  return FockVector(std::move(out));
}

TwoModeVector beam_splitter_50_50(const FockVector& v) {
  const int d = v.cutoff();
  const auto lf = numeric::log_factorials(d);
  const double ln2 = std::log(2.0);
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(d + 1, d + 1);
  for (int n = 0; n <= d; ++n) {
    const cplx c = v[n];
    if (c == cplx(0.0)) continue;
    for (int j = 0; j <= n; ++j) {
      const double coeff = std::exp(0.5 * numeric::log_binomial(lf, n, j) - 0.5 * n * ln2);
      w(j, n - j) += coeff * c;
    }
  }
  return TwoModeVector(std::move(w));
}

DensityOperator partial_trace_first(const TwoModeVector& w) {
  const Eigen::MatrixXcd& a = w.amplitudes();
  // (rho_B)_{kl} = sum_j w(j,k) conj(w(j,l))
  const Eigen::MatrixXcd rho = a.transpose() * a.conjugate();
  return DensityOperator(rho);
}

double purity(const DensityOperator& rho) { return rho.matrix().squaredNorm(); }

cplx moment_oracle(const FockVector& v, int m, int n, double eps_tail) {
  if (m < 0 || n < 0) throw InvalidParameters("moment_oracle: negative order");
  if (m + n > 0 && v.top_mass(m + n) > eps_tail * std::max(v.norm_squared(), 1e-300)) {
    throw TailMassError("moment_oracle: cutoff " + std::to_string(v.cutoff()) +
                        " leaves no headroom for order (" + std::to_string(m) + "," + std::to_string(n) + ")");
  }
  FockVector bra = v;
  for (int i = 0; i < m; ++i) bra = apply_annihilation(bra);
  FockVector ket = v;
  for (int i = 0; i < n; ++i) ket = apply_annihilation(ket);
  return bra.inner(ket);
}

DensityOperator amplitude_damping_kraus(const DensityOperator& rho, double kappa_t) {
  if (!(kappa_t >= 0.0)) throw InvalidParameters("amplitude_damping_kraus: kappa_t must be >= 0");
  if (kappa_t == 0.0) return rho;

  const int d = rho.cutoff();
  const auto lf = numeric::log_factorials(d);
  const double log_eta = -2.0 * kappa_t;                   // ln transmissivity
  const double log_loss = std::log(-std::expm1(-2.0 * kappa_t));  // ln(1 - transmissivity)
  const Eigen::MatrixXcd& in = rho.matrix();

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d + 1, d + 1);
  for (int m = 0; m <= d; ++m) {
    for (int n = m; n <= d; ++n) {
      cplx acc = 0.0;
      for (int k = 0; m + k <= d && n + k <= d; ++k) {
        const double log_w = 0.5 * (numeric::log_binomial(lf, m + k, k) + numeric::log_binomial(lf, n + k, k)) +
                             0.5 * (m + n) * log_eta + k * log_loss;
        acc += std::exp(log_w) * in(m + k, n + k);
      }
      out(m, n) = acc;
    }
  }
  return DensityOperator(out);
}

}  // namespace csqs
