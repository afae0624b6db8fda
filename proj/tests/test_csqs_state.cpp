#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "csqs/csqs_state.hpp"
#include "csqs/errors.hpp"

using namespace csqs;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// N (t a + r a^dag)|alpha> assembled from ladder operators on a coherent vector.
FockVector ladder_state(cplx alpha, double t, double r, int cutoff) {
  const FockVector coh = coherent_fock(alpha, cutoff);
  const FockVector a = apply_annihilation(coh);
  const FockVector ad = apply_creation(coh);
  std::vector<cplx> amps(static_cast<std::size_t>(cutoff) + 1);
  for (int n = 0; n <= cutoff; ++n) amps[n] = t * a[n] + r * ad[n];
  FockVector v(amps);
  return v.scaled(1.0 / std::sqrt(v.norm_squared()));
}

}  // namespace

TEST_CASE("parameter validation", "[state][errors]") {
  CHECK_NOTHROW(StateParams({1.0, 0.0}, 0.6, 0.8));
  CHECK_THROWS_AS(StateParams({1.0, 0.0}, 0.6, 0.6), InvalidParameters);
  CHECK_THROWS_AS(StateParams({NAN, 0.0}, 1.0, 0.0), InvalidParameters);
  CHECK_THROWS_AS(StateParams::from_r({1.0, 0.0}, 1.5), InvalidParameters);
  CHECK_THROWS_AS(normalize(StateParams::from_r({0.0, 0.0}, 1e-6)), DegenerateStateError);
  CHECK_NOTHROW(normalize(StateParams::from_r({0.0, 0.0}, 1e-4)));
}

TEST_CASE("branch selection from t or r", "[state]") {
  const StateParams p = StateParams::from_r({0.5, 0.0}, 0.6);
  CHECK_THAT(p.t(), WithinAbs(0.8, 1e-15));
  CHECK_THAT(StateParams::from_r({0.5, 0.0}, 0.6, true).t(), WithinAbs(-0.8, 1e-15));
  CHECK_THAT(StateParams::from_t({0.5, 0.0}, 0.8).r(), WithinAbs(0.6, 1e-15));
  CHECK_THAT(StateParams::from_t({0.5, 0.0}, 0.8, true).r(), WithinAbs(-0.6, 1e-15));
}

TEST_CASE("normalization constant", "[state]") {
  const NormalizedCsqs coh = normalize(StateParams::from_t({2.0, 0.0}, 1.0));
  CHECK_THAT(coh.n_const(), WithinAbs(0.5, 1e-15));
  const NormalizedCsqs one = normalize(StateParams::from_r({0.0, 0.0}, 1.0));
  CHECK_THAT(one.n_const(), WithinAbs(1.0, 1e-15));
  const StateParams p({1.0, 0.5}, 0.6, 0.8);
  CHECK_THAT(normalization_argument(p), WithinAbs(1.25 + 0.48 * 2.0 * 0.75 + 0.64, 1e-14));
}

TEST_CASE("closed-form amplitudes match the ladder construction", "[state][oracle]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const cplx alpha(2.0 * u(rng), 2.0 * u(rng));
    const double theta = 3.14159 * u(rng);
    const NormalizedCsqs s = normalize(StateParams(alpha, std::cos(theta), std::sin(theta)));
    const int d = csqs_cutoff(s, 4);
    const FockVector closed = csqs_fock(s, d);
    const FockVector ladder = ladder_state(alpha, s.t(), s.r(), d + 2);
    CHECK_THAT(closed.norm_squared(), WithinAbs(1.0, 1e-11));
    for (int n = 0; n <= d; ++n) CHECK(std::abs(closed[n] - ladder[n]) < 1e-12);
  }
}

TEST_CASE("tail mass bookkeeping", "[state]") {
  const NormalizedCsqs s = normalize(StateParams::from_r({1.5, 0.0}, 0.5));
  const int d = csqs_cutoff(s);
  CHECK(csqs_tail_mass(s, d) < kDefaultTailEps);
  CHECK(csqs_tail_mass(s, 3) > 1e-3);
  CHECK_THROWS_AS(csqs_fock(s, 3), TailMassError);
}

TEST_CASE("closed moments match the ladder oracle, including m or n = 0", "[state][oracle][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 15; ++k) {
    const cplx alpha(1.8 * u(rng), 1.8 * u(rng));
    const double theta = 3.14159 * u(rng);
    const NormalizedCsqs s = normalize(StateParams(alpha, std::cos(theta), std::sin(theta)));
    const FockVector v = csqs_fock(s, csqs_cutoff(s, 10));
    for (int m = 0; m <= 3; ++m) {
      for (int n = 0; n <= 3; ++n) {
        const cplx closed = moment_closed(s, m, n);
        const cplx oracle = moment_oracle(v, m, n);
        CHECK(std::abs(closed - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
      }
    }
  }
}

TEST_CASE("moment conjugate symmetry", "[state][property]") {
  const NormalizedCsqs s = normalize(StateParams({0.7, -1.1}, -0.6, 0.8));
  for (int m = 0; m <= 4; ++m) {
    for (int n = 0; n <= 4; ++n) CHECK(std::abs(moment_closed(s, m, n) - std::conj(moment_closed(s, n, m))) < 1e-13);
  }
}

TEST_CASE("moments at alpha = 0 fall back to the oracle", "[state]") {
  const NormalizedCsqs one = normalize(StateParams::from_r({0.0, 0.0}, 1.0));
  CHECK_THAT(moment_closed(one, 1, 1).real(), WithinAbs(1.0, 1e-14));
  CHECK(std::abs(moment_closed(one, 0, 1)) < 1e-14);
  CHECK_THAT(moment_closed(one, 0, 0).real(), WithinAbs(1.0, 0.0));
}

TEST_CASE("coherent line includes the vacuum", "[state]") {
  const NormalizedCsqs vac = normalize(StateParams::from_t({0.0, 0.0}, 1.0));
  CHECK(vac.coherent());
  CHECK(std::isinf(vac.n_const()));
  const FockVector v = csqs_fock(vac, 3);
  CHECK(v[0] == cplx(1.0));
  CHECK(v[1] == cplx(0.0));
  CHECK(moment_closed(vac, 1, 1) == cplx(0.0));
  CHECK(csqs_tail_mass(vac, 1) == 0.0);

  // Away from alpha = 0 the branch agrees with the generic formulas.
  const cplx alpha(0.8, -0.5);
  const NormalizedCsqs coh = normalize(StateParams::from_t(alpha, -1.0));
  const FockVector c = csqs_fock(coh, csqs_cutoff(coh));
  CHECK_THAT(std::abs(c.inner(coherent_fock(alpha, c.cutoff()))), WithinAbs(1.0, 1e-12));
  CHECK(std::abs(moment_closed(coh, 2, 1) - std::conj(alpha) * std::conj(alpha) * alpha) < 1e-15);
}
