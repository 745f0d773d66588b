#pragma once

// Per-wave quantities shared by the triplet model, the coupled-wave integrator
// and the pipeline. Everything is SI and templated on the real scalar so the
// same formulas can be evaluated in extended precision.

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <string_view>

#include "tripletgen/errors.hpp"

namespace tripletgen {

/// CODATA 2018.
template <typename Scalar>
struct PhysicalConstants {
  static constexpr Scalar c = Scalar(299792458.0L);
  static constexpr Scalar eps0 = Scalar(8.8541878128e-12L);
  static constexpr Scalar hbar = Scalar(1.054571817e-34L);
};

using Constants = PhysicalConstants<double>;

enum class Role { pump, stimulation, signal, idler };
enum class Polarization { y, z };

inline std::string_view to_string(Role r) {
  switch (r) {
    case Role::pump: return "pump";
    case Role::stimulation: return "stimulation";
    case Role::signal: return "signal";
    case Role::idler: return "idler";
  }
  return "?";
}

template <typename Scalar>
struct OpticalModeT {
  Role role = Role::pump;
  Scalar wavelength{};        // m
  Scalar refractive_index{1};
  Polarization polarization = Polarization::y;
  Scalar spectral_width{};    // rad/s
};

template <typename Scalar>
struct BeamGeometryT {
  Scalar waist_radius{};      // 1/e^2 intensity radius, m
  Scalar pulse_duration{};    // s
  Scalar repetition_rate{};   // Hz
};

template <typename Scalar>
struct CrystalConfigT {
  Scalar length{};            // m
  Scalar chi3_eff{};          // m^2/V^2
  std::string axis_label = "x";
};

using OpticalMode = OpticalModeT<double>;
using BeamGeometry = BeamGeometryT<double>;
using CrystalConfig = CrystalConfigT<double>;

template <typename Scalar>
void validate(const OpticalModeT<Scalar>& m) {
  if (!(m.wavelength > 0)) throw DomainError("optical mode: wavelength must be > 0");
  if (!(m.refractive_index >= 1)) throw DomainError("optical mode: refractive index must be >= 1");
  if (!(m.spectral_width >= 0)) throw DomainError("optical mode: spectral width must be >= 0");
}

template <typename Scalar>
void validate(const BeamGeometryT<Scalar>& g) {
  if (!(g.waist_radius > 0 && g.pulse_duration > 0 && g.repetition_rate > 0))
    throw DomainError("beam geometry: waist, pulse duration and repetition rate must be > 0");
}

template <typename Scalar>
void validate(const CrystalConfigT<Scalar>& x) {
  if (!(x.length > 0)) throw DomainError("crystal: length must be > 0");
  if (!(x.chi3_eff > 0)) throw DomainError("crystal: chi3_eff must be > 0");
}

template <typename Scalar>
Scalar angular_frequency_of(Scalar wavelength) {
  if (!(wavelength > 0)) throw DomainError("angular_frequency: wavelength must be > 0");
  return 2 * std::numbers::pi_v<Scalar> * PhysicalConstants<Scalar>::c / wavelength;
}

/// omega = 2 pi c / lambda.
template <typename Scalar>
Scalar angular_frequency(const OpticalModeT<Scalar>& mode) {
  return angular_frequency_of(mode.wavelength);
}

/// Converts a FWHM wavelength width to angular frequency, 2 pi c dl / l^2.
template <typename Scalar>
Scalar spectral_width_to_rad(Scalar delta_lambda, Scalar lambda) {
  if (!(delta_lambda > 0) || !(lambda > 0))
    throw DomainError("spectral_width_to_rad: widths and wavelengths must be > 0");
  return 2 * std::numbers::pi_v<Scalar> * PhysicalConstants<Scalar>::c * delta_lambda /
         (lambda * lambda);
}

/// Coupling coefficient omega / (2 n c) of the coupled-wave equations.
template <typename Scalar>
Scalar kappa(const OpticalModeT<Scalar>& mode) {
  validate(mode);
  return angular_frequency(mode) / (2 * mode.refractive_index * PhysicalConstants<Scalar>::c);
}

namespace detail {
// xi = (tau/4) (pi/2)^{3/2} eps0 c n (w E)^2  ==>  xi = energy_factor * E^2
template <typename Scalar>
Scalar energy_factor(const BeamGeometryT<Scalar>& geom, Scalar n) {
  using C = PhysicalConstants<Scalar>;
  const Scalar half_pi = std::numbers::pi_v<Scalar> / 2;
  return geom.pulse_duration / 4 * half_pi * std::sqrt(half_pi) * C::eps0 * C::c * n *
         geom.waist_radius * geom.waist_radius;
}
}  // namespace detail

/// Peak amplitude of a pulse with Gaussian profile in time and space.
template <typename Scalar>
Scalar energy_to_field(Scalar energy, const BeamGeometryT<Scalar>& geom, Scalar n) {
  if (!(energy >= 0)) throw DomainError("energy_to_field: energy must be >= 0");
  validate(geom);
  return std::sqrt(energy / detail::energy_factor(geom, n));
}

template <typename Scalar>
Scalar field_to_energy(Scalar field, const BeamGeometryT<Scalar>& geom, Scalar n) {
  if (!(field >= 0)) throw DomainError("field_to_energy: field amplitude must be >= 0");
  validate(geom);
  return detail::energy_factor(geom, n) * field * field;
}

/// Classical stand-in for the vacuum fluctuation of an unseeded mode,
/// sqrt(dw hbar w / (4 pi c eps0 n S)).
template <typename Scalar>
Scalar vacuum_field_amplitude(const OpticalModeT<Scalar>& mode, Scalar cross_section) {
  using C = PhysicalConstants<Scalar>;
  validate(mode);
  if (!(cross_section > 0)) throw DomainError("vacuum_field_amplitude: cross-section must be > 0");
  if (!(mode.spectral_width > 0))
    throw DomainError("vacuum_field_amplitude: spectral width must be > 0");
  const Scalar omega = angular_frequency(mode);
  return std::sqrt(mode.spectral_width * C::hbar * omega /
                   (4 * std::numbers::pi_v<Scalar> * C::c * C::eps0 * mode.refractive_index *
                    cross_section));
}

/// Disk of the pump waist, the default overlap cross-section.
template <typename Scalar>
Scalar pump_disk_cross_section(Scalar pump_waist) {
  if (!(pump_waist > 0)) throw DomainError("cross-section: waist must be > 0");
  return std::numbers::pi_v<Scalar> * pump_waist * pump_waist;
}

/// Fraction of the stimulation beam seen by the pump, 1 - exp(-2 (wp/wsti)^2).
template <typename Scalar>
Scalar overlap_factor(Scalar pump_waist, Scalar stimulation_waist) {
  if (!(pump_waist > 0) || !(stimulation_waist > 0))
    throw DomainError("overlap_factor: waists must be > 0");
  const Scalar r = pump_waist / stimulation_waist;
  return -std::expm1(-2 * r * r);
}

/// The four interacting waves, one per role.
template <typename Scalar>
struct ModeSetT {
  OpticalModeT<Scalar> pump, stimulation, signal, idler;

  const OpticalModeT<Scalar>& operator[](Role r) const {
    switch (r) {
      case Role::pump: return pump;
      case Role::stimulation: return stimulation;
      case Role::signal: return signal;
      case Role::idler: return idler;
    }
    return pump;
  }
};

using ModeSet = ModeSetT<double>;

/// Sorts an unordered list of modes by role; each role must appear exactly once.
template <typename Scalar>
ModeSetT<Scalar> assemble_modes(std::span<const OpticalModeT<Scalar>> modes) {
  if (modes.size() != 4)
    throw ConfigError("expected exactly four optical modes, got " + std::to_string(modes.size()));
  std::array<const OpticalModeT<Scalar>*, 4> slot{};
  for (const auto& m : modes) {
    auto& s = slot[static_cast<std::size_t>(m.role)];
    if (s != nullptr) throw ConfigError("duplicate optical mode role: " + std::string(to_string(m.role)));
    s = &m;
  }
  for (std::size_t k = 0; k < slot.size(); ++k)
    if (slot[k] == nullptr)
      throw ConfigError("missing optical mode role: " + std::string(to_string(static_cast<Role>(k))));
  return {*slot[0], *slot[1], *slot[2], *slot[3]};
}

/// Collinear wave-vector mismatch (w_p n_p - w_sti n_sti - w_s n_s - w_i n_i) / c.
template <typename Scalar>
Scalar phase_mismatch(const ModeSetT<Scalar>& m) {
  auto k = [](const OpticalModeT<Scalar>& mode) {
    return angular_frequency(mode) * mode.refractive_index;
  };
  return (k(m.pump) - k(m.stimulation) - k(m.signal) - k(m.idler)) / PhysicalConstants<Scalar>::c;
}

template <typename Scalar>
Scalar phase_mismatch(std::span<const OpticalModeT<Scalar>> modes) {
  return phase_mismatch(assemble_modes(modes));
}

/// Mean photon flux of a pulse train: (xi / hbar w) f_rep.
template <typename Scalar>
Scalar photons_per_second(Scalar energy, Scalar wavelength, Scalar repetition_rate) {
  if (!(energy >= 0)) throw DomainError("photons_per_second: energy must be >= 0");
  if (!(repetition_rate > 0)) throw DomainError("photons_per_second: repetition rate must be > 0");
  return energy / (PhysicalConstants<Scalar>::hbar * angular_frequency_of(wavelength)) *
         repetition_rate;
}

}  // namespace tripletgen
