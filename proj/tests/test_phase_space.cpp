#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "csqs/errors.hpp"
#include "csqs/kernels.hpp"
#include "csqs/phase_space.hpp"

using namespace csqs;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

NormalizedCsqs state_t(double alpha, double t) { return normalize(StateParams::from_t({alpha, 0.0}, t)); }

// Negative volume of the single-photon Wigner function (2/pi)(4|g|^2 - 1)e^{-2|g|^2},
// integrated radially in closed form.
const double kFockOneNegativity = 2.0 * std::exp(-0.5) - 1.0;

}  // namespace

TEST_CASE("closed Wigner function matches the displaced-parity oracle", "[phase_space][oracle]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const cplx alpha(1.4 * u(rng), 1.4 * u(rng));
    const double theta = kPi * u(rng);
    const NormalizedCsqs s = normalize(StateParams(alpha, std::cos(theta), std::sin(theta)));
    const DensityOperator rho = DensityOperator::pure(csqs_fock(s, csqs_cutoff(s, 2, kFieldTailEps)));
    for (int j = 0; j < 5; ++j) {
      const cplx g(2.1 * u(rng), 2.1 * u(rng));
      CHECK_THAT(wigner_closed(s, g), WithinAbs(wigner_oracle(rho, g), 1e-10));
    }
  }
}

TEST_CASE("special Wigner values", "[phase_space]") {
  const NormalizedCsqs one = normalize(StateParams::from_r({0.0, 0.0}, 1.0));
  CHECK_THAT(wigner_closed(one, 0.0), WithinAbs(-2.0 / kPi, 1e-15));
  const NormalizedCsqs coh = state_t(1.0, 1.0);
  CHECK_THAT(wigner_closed(coh, {1.0, 0.0}), WithinAbs(2.0 / kPi, 1e-15));
  CHECK_THAT(wigner_closed(coh, {1.0, 1.0}), WithinAbs(2.0 / kPi * std::exp(-2.0), 1e-15));
}

TEST_CASE("displacement matrix is unitary on the well-resolved block", "[phase_space]") {
  const Eigen::MatrixXcd d = displacement_matrix({0.4, -0.3}, 60);
  const Eigen::MatrixXcd prod = d.adjoint() * d;
  for (int n = 0; n < 20; ++n) {
    for (int m = 0; m < 20; ++m) CHECK(std::abs(prod(n, m) - (n == m ? 1.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("oracle rejects a truncated density operator", "[phase_space][errors]") {
  const NormalizedCsqs s = state_t(2.0, 0.5);
  const FockVector v = csqs_fock(s, csqs_cutoff(s));
  Eigen::MatrixXcd m = DensityOperator::pure(v).matrix() * 0.9;
  CHECK_THROWS_AS(wigner_oracle(DensityOperator(m), 0.0), TailMassError);
}

TEST_CASE("single-photon negativity volume against the radial integral", "[phase_space][oracle]") {
  const NormalizedCsqs one = normalize(StateParams::from_r({1e-9, 0.0}, 1.0));
  const WignerField f = wigner_field(one, PhaseGrid::default_grid(), 1);
  CHECK_THAT(f.total_integral, WithinAbs(1.0, 1e-8));
  CHECK_THAT(negativity_volume(f), WithinAbs(kFockOneNegativity, 1e-4));
  const WignerField fine = wigner_field(one, PhaseGrid::centered(0.0, 5.0, 1201), 1);
  CHECK_THAT(negativity_volume(fine), WithinAbs(kFockOneNegativity, 1e-5));
}

TEST_CASE("coherent states are non-negative everywhere", "[phase_space][property]") {
  for (double alpha : {0.0, 0.5, 1.75}) {
    const WignerField f = wigner_field(state_t(alpha + 1e-12, 1.0), PhaseGrid::default_grid(), 1);
    CHECK(f.min_value() >= 0.0);
    CHECK(negativity_volume(f) == 0.0);
    CHECK_THAT(f.total_integral, WithinAbs(1.0, 1e-6));
  }
}

TEST_CASE("abs integral equals total plus twice the negative part", "[phase_space][property]") {
  const WignerField f = wigner_field(state_t(0.5, 0.0), PhaseGrid::default_grid(), 1);
  CHECK_THAT(f.abs_integral, WithinAbs(f.total_integral + 2.0 * f.negative_integral, 1e-12));
}

TEST_CASE("panel negativity values", "[phase_space][regression]") {
  // Frozen from an independent Python evaluation of the same grid quadrature.
  const PhaseGrid g = PhaseGrid::default_grid();
  CHECK_THAT(negativity_volume(wigner_field(state_t(0.5, 0.0), g)), WithinAbs(0.15332, 1e-5));
  CHECK_THAT(negativity_volume(wigner_field(state_t(0.5, 1.0 / std::numbers::sqrt2), g)), WithinAbs(0.06973, 1e-5));
  CHECK(negativity_volume(wigner_field(state_t(0.5, 1.0), g)) == 0.0);
}

TEST_CASE("field peak sits near the displacement", "[phase_space]") {
  const NormalizedCsqs s = state_t(1.75, 0.5);
  const WignerField f = wigner_field(s, PhaseGrid::for_displacement(s.alpha()));
  const auto [i, j] = f.argmax();
  CHECK(std::abs(f.grid.x(i) - 1.75) < 0.5);
  CHECK(std::abs(f.grid.y(j)) <= f.grid.dy());
}

TEST_CASE("serial and OpenMP kernels are bit-identical", "[phase_space][kernels]") {
  const NormalizedCsqs s = normalize(StateParams({0.9, 0.4}, 0.3, -std::sqrt(0.91)));
  const PhaseGrid g = PhaseGrid::default_grid();
  const WignerField serial = wigner_field(s, g, 1);
  for (int workers : {2, 3, 8}) {
    const WignerField par = wigner_field(s, g, workers);
    CHECK(par.values == serial.values);
    CHECK(par.total_integral == serial.total_integral);
    CHECK(par.abs_integral == serial.abs_integral);
    CHECK(par.negative_integral == serial.negative_integral);
  }
  const auto a = kernels::simpson_serial(g, serial.values);
  const auto b = kernels::simpson_omp(g, serial.values, 4);
  CHECK(a.total == b.total);
}

TEST_CASE("Simpson weights integrate cubics exactly", "[kernels]") {
  const auto w = kernels::simpson_weights(7, 0.5);
  double sum = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double x = 0.5 * i;
    sum += w[i] * x * x * x;
  }
  CHECK_THAT(sum, WithinRel(std::pow(3.0, 4) / 4.0, 1e-14));
}

TEST_CASE("grid validation and adaptivity", "[grid][errors]") {
  PhaseGrid g;
  g.nx = 400;
  CHECK_THROWS_AS(g.validate(), InvalidParameters);
  g.nx = 401;
  g.x_max = g.x_min;
  CHECK_THROWS_AS(g.validate(), InvalidParameters);
  const PhaseGrid moved = PhaseGrid::for_displacement({3.0, -1.0});
  CHECK(moved.x_min == -3.0);
  CHECK(moved.y_max == 5.0);
  CHECK(PhaseGrid::for_displacement({1.5, 0.0}).x_min == -6.0);
  CHECK(PhaseGrid::default_grid().covers({2.0, 0.0}, 3.0));
  CHECK_FALSE(PhaseGrid::default_grid().covers({4.0, 0.0}, 3.0));
}

TEST_CASE("numeric log-negativity", "[phase_space]") {
  CHECK_THAT(wln_numeric(state_t(1.0, 1.0), PhaseGrid::default_grid()), WithinAbs(0.0, 1e-9));
  CHECK(wln_numeric(state_t(0.5, 0.0), PhaseGrid::default_grid()) > 0.2);
  const PhaseGrid tiny = PhaseGrid::centered(0.0, 1.0, 41);
  CHECK_THROWS_AS(wln_numeric(state_t(0.5, 0.0), tiny), GridError);
}

TEST_CASE("quarantined closed log-negativity expression", "[phase_space][errors]") {
  const NormalizedCsqs s = normalize(StateParams::from_r({2.0, 0.0}, 0.5));
  const double n2 = s.n_const() * s.n_const();
  CHECK_THAT(wln_reported_closed(s),
             WithinRel(std::log2(n2 * (std::pow(s.t() + s.r(), 2) * 4.0 - 5.0 * 0.25)), 1e-14));
  CHECK_THROWS_AS(wln_reported_closed(normalize(StateParams::from_r({0.1, 0.0}, 0.5))), DomainError);
  CHECK_THROWS_AS(wln_reported_closed(normalize(StateParams::from_r({1.0, 1.0}, 0.5))), DomainError);
}
