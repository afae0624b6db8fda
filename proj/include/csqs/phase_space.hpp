#pragma once

#include <utility>
#include <vector>

#include "csqs/csqs_state.hpp"
#include "csqs/fock.hpp"
#include "csqs/grid.hpp"

namespace csqs {

inline constexpr double kDefaultGridEps = 1e-3;

/// Sampled Wigner function with cached Simpson integrals of W, |W| and max(-W, 0).
/// values are row-major: values[i * ny + j] = W(x_i + i y_j).
struct WignerField {
  PhaseGrid grid;
  std::vector<double> values;
  double total_integral = 0.0;
  double abs_integral = 0.0;
  double negative_integral = 0.0;

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.ny + j]; }
  double min_value() const;
  double max_value() const;
  /// Grid indices (i, j) of the largest sample.
  std::pair<int, int> argmax() const;
};

/// Integrates `values` over `grid` and packages the field. Throws GridError on
/// non-finite samples.
WignerField make_field(const PhaseGrid& grid, std::vector<double> values, int threads = 1);

/// N^2 [|t a + r(2 g* - a*)|^2 - r^2] (2/pi) exp(-2|g - a|^2)
double wigner_closed(const NormalizedCsqs& state, cplx gamma);

/// (2/pi) Tr[rho D(g) P D(g)^dag] with P the parity, via <n|D(2g)|m> in
/// associated-Laguerre form. Throws TailMassError if Tr rho is not within
/// eps_tail of 1.
double wigner_oracle(const DensityOperator& rho, cplx gamma, double eps_tail = kDefaultTailEps);

/// <n|D(beta)|m> for all n, m <= cutoff; row n, column m.
Eigen::MatrixXcd displacement_matrix(cplx beta, int cutoff);

/// Pointwise wigner_closed over the grid. threads == 1 runs the serial kernels.
WignerField wigner_field(const NormalizedCsqs& state, const PhaseGrid& grid, int threads = 0);

/// Simpson integral of max(-W, 0).
double negativity_volume(const WignerField& field);

/// log2 of the |W| integral. Throws GridError when the W integral is off 1 by more than eps_grid.
double wln_from_field(const WignerField& field, double eps_grid = kDefaultGridEps);
double wln_numeric(const NormalizedCsqs& state, const PhaseGrid& grid, double eps_grid = kDefaultGridEps,
                   int threads = 0);

/// Quarantined closed expression log2[N^2((t + r)^2 a^2 - 5 r^2)] for real alpha.
/// It is not a valid WLN (it goes negative); kept only for comparison reports.
/// Throws DomainError for complex alpha or a non-positive log argument.
double wln_reported_closed(const NormalizedCsqs& state);

}  // namespace csqs
