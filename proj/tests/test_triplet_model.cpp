#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tripletgen/config.hpp"
#include "tripletgen/triplet_model.hpp"

using namespace tripletgen;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

InteractionConfig paper_point(double xi_p = 19.3e-6, double xi_sti = 11.2e-6) {
  return make_interaction(paper_default_config(), xi_p, xi_sti);
}

InteractionConfig symmetric(InteractionConfig ic) {
  ic.modes.idler = ic.modes.signal;
  ic.modes.idler.role = Role::idler;
  return ic;
}

}  // namespace

TEST_CASE("gain parameter at the maximal measured point") {
  const InteractionConfig ic = paper_point();
  const double beta = gain_parameter_beta(ic);
  // Hand evaluation: 0.537 * 7.8e-22 * 4.93820e8 * 2.44425e8 * sqrt(1.09665e6 * 1.04765e6)
  CHECK(rel(beta, 54.1905718615) < 1e-8);
  CHECK(rel(beta * ic.crystal.length, 0.54) < 0.01);

  SUBCASE("field route and psi/energy route agree") {
    CHECK(rel(gain_parameter_beta_from_energies(ic), beta) < 1e-12);
    auto strict = ic;
    strict.convention = BetaConvention::pump_stimulation;
    CHECK(rel(gain_parameter_beta_from_energies(strict), gain_parameter_beta(strict)) < 1e-12);
    const double ratio = std::sqrt(kappa(ic.modes.pump) * kappa(ic.modes.stimulation) /
                                   (kappa(ic.modes.signal) * kappa(ic.modes.idler)));
    CHECK(rel(gain_parameter_beta(strict) / beta, ratio) < 1e-12);
  }

  SUBCASE("computed overlap instead of the override") {
    auto ic2 = ic;
    ic2.gamma_override.reset();
    CHECK(rel(gain_parameter_beta(ic2) / beta, 0.5762034541 / 0.537) < 1e-9);
  }

  CHECK(gain_parameter_beta(paper_point(0.0, 11.2e-6)) == 0.0);
  CHECK(gain_parameter_beta(paper_point(19.3e-6, 0.0)) == 0.0);
  CHECK(rel(gain_parameter_beta(paper_point(4 * 19.3e-6, 4 * 11.2e-6)), 4 * beta) < 1e-12);
  CHECK(rel(gain_parameter_beta(paper_point(4 * 19.3e-6, 11.2e-6)), 2 * beta) < 1e-12);
}

TEST_CASE("psi factors") {
  CHECK(rel(psi_factor(15e-12, 1.79), 2.85079804917e13) < 1e-9);
  CHECK(rel(psi_factor(15e-12, 1.82), 2.80380687257e13) < 1e-9);
  CHECK(rel(psi_factor(30e-12, 1.79), psi_factor(15e-12, 1.79) / 2) < 1e-15);
  CHECK_THROWS_AS(psi_factor(0.0, 1.79), DomainError);

  const BeamGeometry g{47.5e-6, 15e-12, 10};
  const double e = energy_to_field(19.3e-6, g, 1.79);
  CHECK(rel(e * e, psi_factor(15e-12, 1.79) * 19.3e-6 / (g.waist_radius * g.waist_radius)) < 1e-12);
}

TEST_CASE("simplified flux") {
  CHECK(triplet_flux_simplified(0.0, 0.01, 2.489e12) == 0.0);
  CHECK(rel(triplet_flux_simplified(54.0, 0.01, 2.489e12), 2.538571561e10) < 1e-9);
  const double small = triplet_flux_simplified(1e-2, 0.01, 2.489e12);   // beta L = 1e-4
  CHECK(rel(small, 2.489e12 / (16 * 3.14159265358979) * 1e-8) < 1.1e-4);
  CHECK_THROWS_AS(triplet_flux_simplified(1.0, 0.0, 1.0), DomainError);

  Eigen::ArrayXd bl = Eigen::ArrayXd::LinSpaced(11, 0.0, 5.0);
  const Eigen::ArrayXd rates = triplet_flux_simplified(bl, 2.489e12);
  for (Eigen::Index k = 0; k < bl.size(); ++k)
    CHECK(rates(k) == doctest::Approx(triplet_flux_simplified(bl(k), 1.0, 2.489e12)).epsilon(1e-13));
}

TEST_CASE("full flux with distinct signal and idler") {
  const InteractionConfig ic = paper_point();
  CHECK(triplet_rate_full(ic, 0.0) == 0.0);

  SUBCASE("reduces to the symmetric form") {
    const InteractionConfig sym = symmetric(ic);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> bl(0.0, 5.0);
    for (int k = 0; k < 200; ++k) {
      const double beta = bl(rng) / sym.crystal.length;
      const double full = triplet_rate_full(sym, beta);
      const double simple = triplet_flux_simplified(beta, sym.crystal.length, sym.delta_omega);
      if (simple == 0) {
        CHECK(full == 0);
      } else {
        REQUIRE(rel(full, simple) < 1e-12);
      }
    }
  }

  SUBCASE("maximal point") {
    const FluxResult r = triplet_flux_full(ic);
    CHECK(rel(r.instantaneous_rate, 2.54e10) < 0.1);
    CHECK(rel(r.triplets_per_pulse, r.instantaneous_rate * 15e-12) < 1e-14);
    CHECK(r.triplets_per_pulse > 0.3);
    CHECK(r.triplets_per_pulse < 0.5);
    CHECK(rel(r.triplets_per_second, 10 * r.triplets_per_pulse) < 1e-15);
    CHECK(rel(r.beta_l, 0.5419) < 1e-3);
  }

  SUBCASE("refuses a phase-mismatched configuration") {
    auto mis = ic;
    mis.delta_k = 100.0;
    CHECK_THROWS_AS(triplet_flux_full(mis), DomainError);
  }

  SUBCASE("monotone in every driving parameter") {
    const double base = triplet_flux_full(ic).instantaneous_rate;
    auto up = [&](auto mutate) {
      auto c = ic;
      mutate(c);
      return triplet_flux_full(c).instantaneous_rate;
    };
    CHECK(up([](InteractionConfig& c) { c.pump_energy *= 1.1; }) > base);
    CHECK(up([](InteractionConfig& c) { c.stimulation_energy *= 1.1; }) > base);
    CHECK(up([](InteractionConfig& c) { c.crystal.length *= 1.1; }) > base);
    CHECK(up([](InteractionConfig& c) { c.crystal.chi3_eff *= 1.1; }) > base);
  }
}

TEST_CASE("per-pulse conversion") {
  const BeamGeometry g{47.5e-6, 15e-12, 10};
  CHECK(rel(triplets_per_pulse(2.54e10, g), 0.381) < 1e-3);
  CHECK(triplets_per_pulse(0.0, g) == 0.0);
  CHECK(rel(triplets_per_pulse(2.54e10, g, TauEffPolicy{2.0}), 0.762) < 1e-3);
  CHECK_THROWS_AS(triplets_per_pulse(-1.0, g), DomainError);
}

TEST_CASE("quantum efficiency") {
  CHECK(rel(quantum_efficiency(11.6, 5.2e14), 2.23e-14) < 0.02);
  CHECK(rel(quantum_efficiency(11.6, 8.4e14), 1.38e-14) < 0.02);
  CHECK(quantum_efficiency(0.0, 5.2e14) == 0.0);
  CHECK_THROWS_AS(quantum_efficiency(1.0, 0.0), DomainError);
}

TEST_CASE("invalid interactions are rejected") {
  auto ic = paper_point();
  ic.delta_omega = 0;
  CHECK_THROWS_AS(gain_parameter_beta(ic), DomainError);
  ic = paper_point();
  ic.cross_section = 0;
  CHECK_THROWS_AS(gain_parameter_beta(ic), DomainError);
  ic = paper_point();
  ic.gamma_override = 1.5;
  CHECK_THROWS_AS(gain_parameter_beta(ic), DomainError);
}
