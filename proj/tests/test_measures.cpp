#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "csqs/errors.hpp"
#include "csqs/measures.hpp"

using namespace csqs;
using Catch::Matchers::WithinAbs;

namespace {

NormalizedCsqs state_r(cplx alpha, double r, bool negative_t = false) {
  return normalize(StateParams::from_r(alpha, r, negative_t));
}

}  // namespace

TEST_CASE("linear entropy limits", "[measures]") {
  CHECK_THAT(linear_entropy_closed(normalize(StateParams::from_t({1.3, 0.4}, 1.0))), WithinAbs(0.0, 1e-14));
  CHECK_THAT(linear_entropy_closed(state_r({1e-6, 0.0}, 1.0)), WithinAbs(0.5, 1e-6));
  CHECK_THAT(linear_entropy_oracle(state_r({0.0, 0.0}, 1.0), 4), WithinAbs(0.5, 1e-12));
  CHECK_THAT(linear_entropy_oracle(normalize(StateParams::from_t({0.8, 0.0}, 1.0)), 30), WithinAbs(0.0, 1e-10));
}

TEST_CASE("linear entropy closed form vs splitter oracle on random states", "[measures][oracle][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const cplx alpha = std::polar(2.5 * std::abs(u(rng)), std::numbers::pi * u(rng));
    const double theta = std::numbers::pi * u(rng);
    const NormalizedCsqs s = normalize(StateParams(alpha, std::cos(theta), std::sin(theta)));
    CHECK_THAT(linear_entropy_closed(s), WithinAbs(linear_entropy_oracle(s, csqs_cutoff(s)), 1e-8));
  }
}

TEST_CASE("uncorrected linear entropy variant disagrees with the oracle", "[measures]") {
  const NormalizedCsqs s = state_r({1.0, 0.0}, 0.6);
  const double oracle = linear_entropy_oracle(s, csqs_cutoff(s));
  CHECK_THAT(linear_entropy_closed(s), WithinAbs(oracle, 1e-10));
  CHECK(std::abs(linear_entropy_uncorrected(s) - oracle) > 1e-3);
}

TEST_CASE("linear entropy monotonicity on the positive branch", "[measures][property]") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    double prev = -1.0;
    for (int k = 0; k <= 20; ++k) {
      const double le = linear_entropy_closed(state_r({alpha, 0.0}, 0.05 * k));
      CHECK(le >= prev - 1e-12);
      prev = le;
    }
  }
  for (double r : {0.25, 0.5, 1.0}) {
    double prev = 2.0;
    for (double alpha = 0.5; alpha <= 3.0 + 1e-9; alpha += 0.05) {
      const double le = linear_entropy_closed(state_r({alpha, 0.0}, r));
      CHECK(le <= prev + 1e-12);
      prev = le;
    }
  }
}

TEST_CASE("skew measure limits and oracle agreement", "[measures]") {
  CHECK(skew_closed(normalize(StateParams::from_t({1.2, 0.0}, 1.0))) == 0.5);
  CHECK_THAT(skew_closed(state_r({1e-6, 0.0}, 1.0)), WithinAbs(1.5, 1e-6));
  CHECK_THAT(skew_closed(state_r({0.0, 0.0}, 1.0)), WithinAbs(1.5, 1e-14));
  const NormalizedCsqs s = state_r({1.5, 0.0}, 0.4);
  CHECK_THAT(skew_closed(s), WithinAbs(skew_oracle(s, csqs_cutoff(s, 4)), 1e-9));
}

TEST_CASE("skew measure lower bound", "[measures][property]") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const cplx alpha(3.0 * u(rng), 3.0 * u(rng));
    const double theta = std::numbers::pi * u(rng);
    CHECK(skew_closed(normalize(StateParams(alpha, std::cos(theta), std::sin(theta)))) >= 0.5 - 1e-10);
  }
}

TEST_CASE("covariance examples", "[measures]") {
  const CovarianceMatrix coh = covariance(normalize(StateParams::from_t({0.7, -0.2}, 1.0)));
  CHECK_THAT(coh.s_pp, WithinAbs(1.0, 1e-10));
  CHECK_THAT(coh.s_qq, WithinAbs(1.0, 1e-10));
  CHECK_THAT(coh.s_pq, WithinAbs(0.0, 1e-10));
  const CovarianceMatrix one = covariance(state_r({0.0, 0.0}, 1.0));
  CHECK_THAT(one.s_pp, WithinAbs(3.0, 1e-10));
  CHECK_THAT(one.s_qq, WithinAbs(3.0, 1e-10));
  CHECK_THAT(one.s_pq, WithinAbs(0.0, 1e-10));
  const NormalizedCsqs s = normalize(StateParams({0.9, 0.6}, -0.28, 0.96));
  const CovarianceMatrix c = covariance(s);
  const CovarianceMatrix o = covariance_oracle(s, csqs_cutoff(s, 4));
  CHECK_THAT(c.s_pp, WithinAbs(o.s_pp, 1e-9));
  CHECK_THAT(c.s_qq, WithinAbs(o.s_qq, 1e-9));
  CHECK_THAT(c.s_pq, WithinAbs(o.s_pq, 1e-9));
  CHECK(c.determinant() >= 1.0 - 1e-9);
}

TEST_CASE("Gaussian entropy function", "[measures]") {
  CHECK(gaussian_entropy(1.0) == 0.0);
  CHECK(std::abs(gaussian_entropy(1.0 + 1e-8)) < 1e-6);
  CHECK_THAT(gaussian_entropy(3.0), WithinAbs(2.0, 1e-15));
  CHECK_THROWS_AS(gaussian_entropy(0.5), DomainError);
}

TEST_CASE("relative entropy of non-Gaussianity", "[measures]") {
  CHECK_THAT(rel_entropy_ng(normalize(StateParams::from_t({1.0, 0.0}, 1.0))), WithinAbs(0.0, 1e-9));
  CHECK_THAT(rel_entropy_ng(state_r({1e-6, 0.0}, 1.0)), WithinAbs(2.0, 1e-6));
  CHECK_THROWS_AS(rel_entropy_ng(CovarianceMatrix{0.5, 0.5, 0.0}), CovarianceError);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double theta = std::numbers::pi * u(rng);
    CHECK(rel_entropy_ng(normalize(StateParams({2.0 * u(rng), 2.0 * u(rng)}, std::cos(theta), std::sin(theta)))) >=
          0.0);
  }
}

TEST_CASE("measure reports carry deltas only when both values exist", "[measures]") {
  const MeasureReport both = MeasureReport::make(MeasureName::LE, 0.25, 0.5, "");
  REQUIRE(both.delta.has_value());
  CHECK(*both.delta == 0.25);
  CHECK_FALSE(MeasureReport::make(MeasureName::WLN, std::nullopt, 0.1, "n").delta.has_value());
  CHECK(to_string(MeasureName::delta_NG) == "delta_NG");
  CHECK(to_string(MeasureName::N_rho) == "N_rho");
}
