#pragma once

// Semiclassical triplet flux: vacuum-seeded signal/idler amplified by the
// pump/stimulation product over the crystal length.

#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/Core>

#include "tripletgen/errors.hpp"
#include "tripletgen/optics.hpp"

namespace tripletgen {

/// Which coupling pair enters the gain parameter.
///  - signal_idler: beta = gamma chi E_p E_sti sqrt(kappa_s kappa_i)
///  - pump_stimulation: the printed closed form with kappa_p kappa_sti, kept for comparison.
enum class BetaConvention { signal_idler, pump_stimulation };

template <typename Scalar>
struct InteractionConfigT {
  ModeSetT<Scalar> modes;
  BeamGeometryT<Scalar> pump_geometry;
  BeamGeometryT<Scalar> stimulation_geometry;
  CrystalConfigT<Scalar> crystal;
  Scalar pump_energy{};          // J
  Scalar stimulation_energy{};   // J
  std::optional<Scalar> gamma_override;
  Scalar delta_omega{};          // signal/idler linewidth, rad/s
  Scalar cross_section{};        // m^2
  Scalar delta_k{};              // 1/m
  BetaConvention convention = BetaConvention::signal_idler;
};

using InteractionConfig = InteractionConfigT<double>;

template <typename Scalar>
void validate(const InteractionConfigT<Scalar>& cfg) {
  validate(cfg.modes.pump);
  validate(cfg.modes.stimulation);
  validate(cfg.modes.signal);
  validate(cfg.modes.idler);
  validate(cfg.pump_geometry);
  validate(cfg.stimulation_geometry);
  validate(cfg.crystal);
  if (!(cfg.pump_energy >= 0) || !(cfg.stimulation_energy >= 0))
    throw DomainError("interaction: energies must be >= 0");
  if (!(cfg.delta_omega > 0)) throw DomainError("interaction: delta_omega must be > 0");
  if (!(cfg.cross_section > 0)) throw DomainError("interaction: cross-section must be > 0");
  if (cfg.gamma_override && !(*cfg.gamma_override > 0 && *cfg.gamma_override <= 1))
    throw DomainError("interaction: gamma override must lie in (0, 1]");
}

template <typename Scalar>
Scalar overlap(const InteractionConfigT<Scalar>& cfg) {
  if (cfg.gamma_override) return *cfg.gamma_override;
  return overlap_factor(cfg.pump_geometry.waist_radius, cfg.stimulation_geometry.waist_radius);
}

template <typename Scalar>
Scalar pump_field(const InteractionConfigT<Scalar>& cfg) {
  return energy_to_field(cfg.pump_energy, cfg.pump_geometry, cfg.modes.pump.refractive_index);
}

template <typename Scalar>
Scalar stimulation_field(const InteractionConfigT<Scalar>& cfg) {
  return energy_to_field(cfg.stimulation_energy, cfg.stimulation_geometry,
                         cfg.modes.stimulation.refractive_index);
}

/// psi = (pi/2)^{-3/2} 4 / (c eps0 tau n), so that E^2 = psi xi / w^2.
template <typename Scalar>
Scalar psi_factor(Scalar tau, Scalar n) {
  using C = PhysicalConstants<Scalar>;
  if (!(tau > 0) || !(n > 0)) throw DomainError("psi_factor: tau and n must be > 0");
  const Scalar half_pi = std::numbers::pi_v<Scalar> / 2;
  return 4 / (half_pi * std::sqrt(half_pi) * C::c * C::eps0 * tau * n);
}

template <typename Scalar>
Scalar coupling_product(const InteractionConfigT<Scalar>& cfg) {
  const auto& m = cfg.modes;
  return cfg.convention == BetaConvention::signal_idler ? kappa(m.signal) * kappa(m.idler)
                                                        : kappa(m.pump) * kappa(m.stimulation);
}

/// Gain parameter from the peak fields (1/m).
template <typename Scalar>
Scalar gain_parameter_beta(const InteractionConfigT<Scalar>& cfg) {
  validate(cfg);
  return overlap(cfg) * cfg.crystal.chi3_eff * pump_field(cfg) * stimulation_field(cfg) *
         std::sqrt(coupling_product(cfg));
}

/// Same quantity written directly in terms of pulse energies and psi factors.
template <typename Scalar>
Scalar gain_parameter_beta_from_energies(const InteractionConfigT<Scalar>& cfg) {
  validate(cfg);
  const Scalar psi_p = psi_factor(cfg.pump_geometry.pulse_duration, cfg.modes.pump.refractive_index);
  const Scalar psi_sti = psi_factor(cfg.stimulation_geometry.pulse_duration,
                                    cfg.modes.stimulation.refractive_index);
  const Scalar wp = cfg.pump_geometry.waist_radius;
  const Scalar wsti = cfg.stimulation_geometry.waist_radius;
  return overlap(cfg) * cfg.crystal.chi3_eff *
         std::sqrt(psi_p * psi_sti * cfg.pump_energy * cfg.stimulation_energy *
                   coupling_product(cfg) / (wp * wp * wsti * wsti));
}

/// Vacuum seed amplitudes of signal and idler at the crystal input.
template <typename Scalar>
std::pair<Scalar, Scalar> vacuum_seeds(const InteractionConfigT<Scalar>& cfg) {
  auto s = cfg.modes.signal;
  auto i = cfg.modes.idler;
  s.spectral_width = cfg.delta_omega;
  i.spectral_width = cfg.delta_omega;
  return {vacuum_field_amplitude(s, cfg.cross_section), vacuum_field_amplitude(i, cfg.cross_section)};
}

/// (dw / 16 pi) (e^{beta L} - 1)^2, photons/s while the pulse is on.
template <typename Scalar>
Scalar triplet_flux_simplified(Scalar beta, Scalar length, Scalar delta_omega) {
  if (!(length > 0)) throw DomainError("triplet_flux_simplified: length must be > 0");
  const Scalar g = std::expm1(beta * length);
  return delta_omega / (16 * std::numbers::pi_v<Scalar>) * g * g;
}

/// Array form over a set of beta*L values.
template <typename Derived>
auto triplet_flux_simplified(const Eigen::ArrayBase<Derived>& beta_l,
                             typename Derived::Scalar delta_omega) {
  using Scalar = typename Derived::Scalar;
  return (delta_omega / (16 * std::numbers::pi_v<Scalar>)) *
         (beta_l.exp() - Scalar(1)).square();
}

/// Instantaneous triplet rate with distinct signal and idler parameters.
/// Only valid at perfect phase matching; use the coupled-wave integrator otherwise.
template <typename Scalar>
Scalar triplet_rate_full(const InteractionConfigT<Scalar>& cfg, Scalar beta) {
  using C = PhysicalConstants<Scalar>;
  if (cfg.delta_k != 0)
    throw DomainError(
        "closed-form flux requires delta_k = 0; integrate the coupled-wave equations instead");
  const auto& s = cfg.modes.signal;
  const auto& i = cfg.modes.idler;
  const Scalar ws = angular_frequency(s);
  const Scalar wi = angular_frequency(i);
  const auto [vac_s, vac_i] = vacuum_seeds(cfg);
  const Scalar bl = beta * cfg.crystal.length;
  // cosh(x) - 1 = 2 sinh^2(x/2) keeps precision for small gain.
  const Scalar half_sinh = std::sinh(bl / 2);
  const Scalar amplitude = vac_s * (2 * half_sinh * half_sinh) +
                           std::sqrt(ws * i.refractive_index / (wi * s.refractive_index)) * vac_i *
                               std::sinh(bl);
  return C::eps0 * s.refractive_index * C::c * cfg.cross_section / (4 * C::hbar * ws) * amplitude *
         amplitude;
}

/// Conversion from an instantaneous rate to counts per pulse: tau_eff = factor * tau.
struct TauEffPolicy {
  double factor = 1.0;
};

template <typename Scalar>
Scalar triplets_per_pulse(Scalar rate, const BeamGeometryT<Scalar>& geom,
                          TauEffPolicy policy = {}) {
  if (!(rate >= 0)) throw DomainError("triplets_per_pulse: rate must be >= 0");
  if (!(policy.factor > 0)) throw DomainError("triplets_per_pulse: tau_eff factor must be > 0");
  return rate * geom.pulse_duration * Scalar(policy.factor);
}

template <typename Scalar>
struct FluxResultT {
  Scalar instantaneous_rate{};
  Scalar triplets_per_pulse{};
  Scalar triplets_per_second{};
  Scalar beta_l{};
};

using FluxResult = FluxResultT<double>;

template <typename Scalar>
FluxResultT<Scalar> triplet_flux_full(const InteractionConfigT<Scalar>& cfg,
                                      TauEffPolicy policy = {}) {
  const Scalar beta = gain_parameter_beta(cfg);
  FluxResultT<Scalar> r;
  r.beta_l = beta * cfg.crystal.length;
  r.instantaneous_rate = triplet_rate_full(cfg, beta);
  r.triplets_per_pulse = triplets_per_pulse(r.instantaneous_rate, cfg.pump_geometry, policy);
  r.triplets_per_second = r.triplets_per_pulse * cfg.pump_geometry.repetition_rate;
  return r;
}

template <typename Scalar>
Scalar quantum_efficiency(Scalar triplet_rate, Scalar photon_rate) {
  if (!(photon_rate > 0)) throw DomainError("quantum_efficiency: photon rate must be > 0");
  return triplet_rate / photon_rate;
}

}  // namespace tripletgen
