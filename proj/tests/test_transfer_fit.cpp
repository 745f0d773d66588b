#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tripletgen/errors.hpp"
#include "tripletgen/transfer_fit.hpp"

using namespace tripletgen;

namespace {

std::vector<FitObservation> synthetic(double tf, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<FitObservation> out;
  for (double n : {0.2, 0.35, 0.5, 0.7, 0.9, 1.1, 1.3, 1.6}) {
    const double eta = forward_coincidence_fraction(n, tf);
    const double sigma = noise * eta;
    out.push_back({n, eta + sigma * gauss(rng), sigma});
  }
  return out;
}

}  // namespace

TEST_CASE("recovers the transfer function from noisy synthetic data") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto data = synthetic(0.11, 0.01, seed);
    const auto r = fit_transfer_function(data);
    CAPTURE(seed);
    CHECK(r.transfer_function > 0.105);
    CHECK(r.transfer_function < 0.115);
    CHECK(r.interval.low < r.transfer_function);
    CHECK(r.interval.high > r.transfer_function);
    CHECK_FALSE(r.at_lower_bound);
    CHECK_FALSE(r.at_upper_bound);
    // Chi-square of order the number of points for correctly sized errors.
    CHECK(r.chi2 < 30);
  }
}

TEST_CASE("exact data is fitted exactly") {
  std::vector<FitObservation> data;
  for (double n : {0.3, 0.8, 1.2}) data.push_back({n, forward_coincidence_fraction(n, 0.137), 1e-5});
  const auto r = fit_transfer_function(data);
  CHECK(r.transfer_function == doctest::Approx(0.137).epsilon(1e-9));
  CHECK(r.chi2 < 1e-12);

  SUBCASE("unweighted fit of consistent data") {
    for (auto& p : data) p.sigma = 0;
    const auto u = fit_transfer_function(data);
    CHECK(u.transfer_function == doctest::Approx(0.137).epsilon(1e-9));
    CHECK(u.interval.low == u.interval.high);
  }

  SUBCASE("a repeated point") {
    std::vector<FitObservation> twice{data[1], data[1]};
    CHECK(fit_transfer_function(twice).transfer_function == doctest::Approx(0.137).epsilon(1e-9));
  }
}

TEST_CASE("interval narrows with more precise data") {
  const auto loose = fit_transfer_function(synthetic(0.11, 0.05, 3));
  const auto tight = fit_transfer_function(synthetic(0.11, 0.005, 3));
  CHECK(tight.interval.high - tight.interval.low < loose.interval.high - loose.interval.low);
}

TEST_CASE("optimum at a bound yields a one-sided interval") {
  SUBCASE("true value on the lower edge") {
    std::vector<FitObservation> data;
    for (double n : {0.5, 1.0, 2.0}) data.push_back({n, forward_coincidence_fraction(n, 0.02), 1e-6});
    const auto r = fit_transfer_function(data);
    CHECK(r.transfer_function == doctest::Approx(0.02).epsilon(1e-8));
    CHECK(r.at_lower_bound);
    CHECK(r.interval.low == 0.02);
    CHECK(r.interval.high > 0.02);
  }
  SUBCASE("true value below the range") {
    std::vector<FitObservation> data;
    for (double n : {0.5, 1.0, 2.0}) data.push_back({n, forward_coincidence_fraction(n, 0.01), 1e-6});
    const auto r = fit_transfer_function(data);
    CHECK(r.transfer_function == 0.02);
    CHECK(r.at_lower_bound);
    CHECK(r.interval.low == 0.02);
  }
  SUBCASE("true value above the range") {
    std::vector<FitObservation> data;
    for (double n : {0.5, 1.0, 2.0}) data.push_back({n, forward_coincidence_fraction(n, 0.4), 1e-4});
    const auto r = fit_transfer_function(data);
    CHECK(r.transfer_function == 0.20);
    CHECK(r.at_upper_bound);
    CHECK(r.interval.high == 0.20);
    CHECK(r.interval.low < 0.20);
  }
}

TEST_CASE("rejected inputs") {
  CHECK_THROWS_AS(fit_transfer_function({}), DomainError);
  const std::vector<FitObservation> one{{1.0, 0.01, 1e-3}};
  CHECK_THROWS_AS(fit_transfer_function(one), DomainError);

  std::vector<FitObservation> good{{0.5, 0.003, 1e-4}, {1.0, 0.01, 1e-4}};
  CHECK_THROWS_AS(fit_transfer_function(good, FitBounds{0.2, 0.1}), DomainError);
  CHECK_THROWS_AS(fit_transfer_function(good, FitBounds{0.0, 0.1}), DomainError);

  auto bad = good;
  bad[0].predicted_n = 0;
  CHECK_THROWS_AS(fit_transfer_function(bad), DomainError);
  bad = good;
  bad[1].eta = 1.0;
  CHECK_THROWS_AS(fit_transfer_function(bad), DomainError);
  bad = good;
  bad[1].sigma = -1;
  CHECK_THROWS_AS(fit_transfer_function(bad), DomainError);
  bad = good;
  bad[1].sigma = 0;
  CHECK_THROWS_AS(fit_transfer_function(bad), DomainError);

  // Zero uncertainties demand an exact fit, which inconsistent data cannot give.
  std::vector<FitObservation> clash{{1.0, 0.01, 0}, {1.0, 0.02, 0}};
  CHECK_THROWS_AS(fit_transfer_function(clash), NumericalError);
}
