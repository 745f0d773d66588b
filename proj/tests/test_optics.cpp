#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tripletgen/optics.hpp"

using namespace tripletgen;

namespace {

constexpr double pi = 3.14159265358979323846;

OpticalMode mode(Role r, double lambda, double n, double width = 0) {
  return {r, lambda, n, Polarization::y, width};
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("angular frequency of the pump and generated waves") {
  CHECK(rel(angular_frequency(mode(Role::pump, 532e-9, 1.79)), 3.541e15) < 1e-3);
  CHECK(rel(angular_frequency(mode(Role::signal, 1654e-9, 1.732)), 1.139e15) < 1e-3);

  double previous = angular_frequency_of(1e-7);
  for (double lambda = 2e-7; lambda < 1.0; lambda *= 3) {
    const double w = angular_frequency_of(lambda);
    CHECK(w < previous);
    CHECK(w > 0);
    previous = w;
  }
  CHECK_THROWS_AS(angular_frequency_of(0.0), DomainError);
}

TEST_CASE("spectral widths converted from wavelength widths") {
  CHECK(rel(spectral_width_to_rad(0.5e-9, 532e-9), 3.33e12) < 5e-3);
  CHECK(rel(spectral_width_to_rad(3.2e-9, 1491e-9), 2.71e12) < 5e-3);
  // 2 pi c 3.56 nm / (1654 nm)^2 evaluated by hand: 2.4512e12
  CHECK(rel(spectral_width_to_rad(3.56e-9, 1654e-9), 2.4512e12) < 1e-4);
  CHECK_THROWS_AS(spectral_width_to_rad(0.0, 532e-9), DomainError);
  CHECK_THROWS_AS(spectral_width_to_rad(1e-9, -1.0), DomainError);
}

TEST_CASE("coupling coefficients kappa") {
  CHECK(rel(kappa(mode(Role::signal, 1654e-9, 1.732)), 1.096e6) < 2e-3);
  CHECK(rel(kappa(mode(Role::idler, 1654e-9, 1.813)), 1.047e6) < 2e-3);

  const auto m = mode(Role::signal, 1654e-9, 1.5);
  CHECK(rel(kappa(mode(Role::signal, 1654e-9, 3.0)), kappa(m) / 2) < 1e-14);
  CHECK(rel(kappa(m), kappa(mode(Role::signal, 1654e-9 / 2, 1.5)) / 2) < 1e-14);
}

TEST_CASE("energy and peak field of a Gaussian pulse") {
  const BeamGeometry pump{47.5e-6, 15e-12, 10};
  // Frozen from a direct evaluation of sqrt(4 xi / (tau (pi/2)^{3/2} eps0 c n w^2)).
  const double e = energy_to_field(19.3e-6, pump, 1.79);
  CHECK(rel(e, 4.9381954087e8) < 1e-9);
  CHECK(rel(field_to_energy(4.94e8, pump, 1.79), 19.3e-6) < 2e-3);
  CHECK(energy_to_field(0.0, pump, 1.79) == 0.0);
  CHECK(field_to_energy(0.0, pump, 1.79) == 0.0);
  CHECK(rel(field_to_energy(2 * e, pump, 1.79), 4 * 19.3e-6) < 1e-12);
  CHECK_THROWS_AS(energy_to_field(-1.0, pump, 1.79), DomainError);
  CHECK_THROWS_AS(energy_to_field(1e-6, BeamGeometry{0, 15e-12, 10}, 1.79), DomainError);

  SUBCASE("inverse pair over the working range") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> log_xi(-12, -3), waist(10e-6, 200e-6), tau(1e-12, 1e-9),
        index(1.0, 2.5);
    for (int k = 0; k < 2000; ++k) {
      const BeamGeometry g{waist(rng), tau(rng), 10};
      const double n = index(rng);
      const double xi = std::pow(10.0, log_xi(rng));
      REQUIRE(rel(field_to_energy(energy_to_field(xi, g, n), g, n), xi) < 1e-12);
    }
  }
}

TEST_CASE("vacuum fluctuation amplitude") {
  const double area = pi * 47.5e-6 * 47.5e-6;
  const auto s = mode(Role::signal, 1654e-9, 1.732, 2.489e12);
  const double de = vacuum_field_amplitude(s, area);
  CHECK(rel(de, 26.7) < 0.03);
  CHECK(rel(de, 27.0179) < 1e-4);
  CHECK(rel(pump_disk_cross_section(47.5e-6), area) < 1e-15);

  CHECK(vacuum_field_amplitude(mode(Role::signal, 1654e-9, 1.732, 1e-30), area) < 1e-14);
  CHECK_THROWS_AS(vacuum_field_amplitude(s, 0.0), DomainError);
  CHECK_THROWS_AS(vacuum_field_amplitude(mode(Role::signal, 1654e-9, 1.732, 0.0), area), DomainError);

  // Scaling laws, one factor at a time.
  CHECK(rel(vacuum_field_amplitude(s, 4 * area), de / 2) < 1e-14);
  CHECK(rel(vacuum_field_amplitude(mode(Role::signal, 1654e-9, 1.732, 4 * 2.489e12), area), 2 * de) < 1e-14);
  CHECK(rel(vacuum_field_amplitude(mode(Role::signal, 1654e-9 / 4, 1.732, 2.489e12), area), 2 * de) < 1e-14);
  CHECK(rel(vacuum_field_amplitude(mode(Role::signal, 1654e-9, 4 * 1.732, 2.489e12), area), de / 2) < 1e-14);
}

TEST_CASE("overlap factor of pump and stimulation waists") {
  // 1 - exp(-2 (47.5/72.5)^2), evaluated by hand.
  CHECK(rel(overlap_factor(47.5e-6, 72.5e-6), 0.5762034541) < 1e-9);
  CHECK(rel(overlap_factor(50e-6, 50e-6), 1 - std::exp(-2.0)) < 1e-15);
  CHECK(overlap_factor(1e-6, 1.0) < 1e-11);
  CHECK_THROWS_AS(overlap_factor(0.0, 1e-6), DomainError);

  const double w_sti = 72.5e-6;
  double previous = 0;
  for (double wp = 1e-6; wp <= w_sti; wp += 1e-6) {
    const double g = overlap_factor(wp, w_sti);
    CHECK(g > previous);
    CHECK(g <= 1 - std::exp(-2.0) + 1e-15);
    previous = g;
  }
}

TEST_CASE("collinear phase mismatch") {
  const double c = Constants::c;
  OpticalMode p = mode(Role::pump, 532e-9, 1.79);
  OpticalMode sti = mode(Role::stimulation, 1491e-9, 1.82);
  OpticalMode s = mode(Role::signal, 1654e-9, 1.732);
  OpticalMode i = mode(Role::idler, 1654e-9, 1.0);
  // Choose the idler index that closes the momentum balance.
  i.refractive_index = (angular_frequency(p) * p.refractive_index - angular_frequency(sti) * sti.refractive_index -
                        angular_frequency(s) * s.refractive_index) /
                       angular_frequency(i);
  std::vector<OpticalMode> modes{s, p, i, sti};
  const double scale = angular_frequency(p) * p.refractive_index / c;
  CHECK(std::abs(phase_mismatch<double>(modes)) < 1e-14 * scale);

  modes[0].refractive_index += 1e-3;
  CHECK(std::abs(phase_mismatch<double>(modes) + angular_frequency(s) * 1e-3 / c) < 1e-12 * scale);

  SUBCASE("linear in each index") {
    for (std::size_t k = 0; k < modes.size(); ++k) {
      auto shifted = modes;
      const double d0 = phase_mismatch<double>(shifted);
      shifted[k].refractive_index += 0.01;
      const double d1 = phase_mismatch<double>(shifted);
      shifted[k].refractive_index += 0.01;
      const double d2 = phase_mismatch<double>(shifted);
      CHECK(std::abs((d2 - d1) - (d1 - d0)) < 1e-12 * scale);
      const double sign = modes[k].role == Role::pump ? 1.0 : -1.0;
      CHECK(sign * (d1 - d0) > 0);
    }
  }

  SUBCASE("pump and generated contributions enter with opposite signs") {
    auto a = modes;
    auto b = modes;
    a[1].refractive_index += 0.05;   // pump
    b[0].refractive_index += 0.05 * angular_frequency(p) / angular_frequency(s);   // signal, same w*dn
    const double d0 = phase_mismatch<double>(modes);
    CHECK(std::abs((phase_mismatch<double>(a) - d0) + (phase_mismatch<double>(b) - d0)) < 1e-9 * scale);
  }

  SUBCASE("every role exactly once") {
    std::vector<OpticalMode> dup{s, p, s, sti};
    CHECK_THROWS_AS(phase_mismatch<double>(dup), ConfigError);
    std::vector<OpticalMode> three{s, p, i};
    CHECK_THROWS_AS(phase_mismatch<double>(three), ConfigError);
  }
}

TEST_CASE("photon flux of the input beams") {
  CHECK(rel(photons_per_second(19.3e-6, 532e-9, 10.0), 5.2e14) < 0.02);
  CHECK(rel(photons_per_second(11.2e-6, 1491e-9, 10.0), 8.4e14) < 0.02);
  CHECK(photons_per_second(0.0, 532e-9, 10.0) == 0.0);
  CHECK_THROWS_AS(photons_per_second(1e-6, 532e-9, 0.0), DomainError);
}

TEST_CASE("extended-precision evaluation agrees with double") {
  const OpticalModeT<long double> s{Role::signal, 1654e-9L, 1.732L, Polarization::y, 2.489e12L};
  const long double de = vacuum_field_amplitude(s, 3.14159265358979323846L * 47.5e-6L * 47.5e-6L);
  CHECK(rel(static_cast<double>(de), 27.0179) < 1e-4);
}
