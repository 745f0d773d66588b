#pragma once

// Fixed-step RK4 integration of the collinear four-wave-mixing equations
//   dE_s/dz   = i k_s   chi E_p E_sti* E_i* e^{-i dk z}
//   dE_i/dz   = i k_i   chi E_p E_sti* E_s* e^{-i dk z}
//   dE_sti/dz = i k_sti chi E_p E_s*   E_i* e^{-i dk z}
//   dE_p/dz   = i k_p   chi E_sti E_s  E_i  e^{+i dk z}
// Under the undepleted-pump approximation the last two are frozen.

#include <complex>
#include <sstream>

#include <Eigen/Core>

#include "tripletgen/errors.hpp"
#include "tripletgen/optics.hpp"
#include "tripletgen/triplet_model.hpp"

namespace tripletgen {

template <typename Scalar>
using Amplitudes4 = Eigen::Matrix<std::complex<Scalar>, 4, 1>;

/// Amplitude slots, matching Role.
enum Slot : Eigen::Index { kPump = 0, kStim = 1, kSignal = 2, kIdler = 3 };

template <typename Scalar>
struct FieldStateT {
  Scalar z{};
  Amplitudes4<Scalar> amplitudes = Amplitudes4<Scalar>::Zero();
};

using FieldState = FieldStateT<double>;

struct PropagationOptions {
  bool depleted = false;
  int steps = 10000;
};

namespace detail {

template <typename Scalar>
struct WaveEquations {
  Eigen::Matrix<Scalar, 4, 1> kappa;
  Scalar chi{};
  Scalar delta_k{};
  bool depleted = false;

  Amplitudes4<Scalar> operator()(Scalar z, const Amplitudes4<Scalar>& e) const {
    using Complex = std::complex<Scalar>;
    const Complex i_chi(0, chi);
    const Complex phase = std::polar(Scalar(1), -delta_k * z);
    const Complex p = e(kPump), st = e(kStim), s = e(kSignal), id = e(kIdler);

    Amplitudes4<Scalar> d;
    d(kSignal) = kappa(kSignal) * i_chi * p * std::conj(st) * std::conj(id) * phase;
    d(kIdler) = kappa(kIdler) * i_chi * p * std::conj(st) * std::conj(s) * phase;
    if (depleted) {
      d(kStim) = kappa(kStim) * i_chi * p * std::conj(s) * std::conj(id) * phase;
      d(kPump) = kappa(kPump) * i_chi * st * s * id * std::conj(phase);
    } else {
      d(kStim) = d(kPump) = Complex(0);
    }
    return d;
  }
};

}  // namespace detail

/// Integrates from initial.z to the crystal exit.
template <typename Scalar>
FieldStateT<Scalar> propagate_coupled_waves(const FieldStateT<Scalar>& initial,
                                            const InteractionConfigT<Scalar>& cfg,
                                            PropagationOptions options = {}) {
  const Scalar length = cfg.crystal.length;
  if (options.steps < 100) throw DomainError("propagate_coupled_waves: at least 100 steps required");
  if (!(length > 0)) throw DomainError("propagate_coupled_waves: crystal length must be > 0");
  if (!(initial.z >= 0 && initial.z <= length))
    throw DomainError("propagate_coupled_waves: initial z outside the crystal");
  if (!initial.amplitudes.allFinite())
    throw DomainError("propagate_coupled_waves: initial amplitudes must be finite");

  detail::WaveEquations<Scalar> f;
  f.kappa << kappa(cfg.modes.pump), kappa(cfg.modes.stimulation), kappa(cfg.modes.signal),
      kappa(cfg.modes.idler);
  f.chi = cfg.crystal.chi3_eff;
  f.delta_k = cfg.delta_k;
  f.depleted = options.depleted;

  const Scalar h = (length - initial.z) / Scalar(options.steps);
  Amplitudes4<Scalar> e = initial.amplitudes;
  for (int n = 0; n < options.steps; ++n) {
    const Scalar z = initial.z + Scalar(n) * h;
    const Amplitudes4<Scalar> k1 = f(z, e);
    const Amplitudes4<Scalar> k2 = f(z + h / 2, e + (h / 2) * k1);
    const Amplitudes4<Scalar> k3 = f(z + h / 2, e + (h / 2) * k2);
    const Amplitudes4<Scalar> k4 = f(z + h, e + h * k3);
    e += (h / 6) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
    if (!e.allFinite()) {
      std::ostringstream msg;
      msg << "coupled-wave integration overflowed at z = " << double(z + h) << " m";
      throw NumericalError(msg.str());
    }
  }
  return {length, e};
}

/// Photon-flux proxies n |E|^2 / omega of each wave; their changes obey the
/// Manley-Rowe relations.
template <typename Scalar>
Eigen::Array<Scalar, 4, 1> photon_flux_proxies(const FieldStateT<Scalar>& state,
                                               const ModeSetT<Scalar>& modes) {
  Eigen::Array<Scalar, 4, 1> phi;
  const OpticalModeT<Scalar>* ordered[4] = {&modes.pump, &modes.stimulation, &modes.signal,
                                            &modes.idler};
  for (Eigen::Index k = 0; k < 4; ++k)
    phi(k) = ordered[k]->refractive_index * std::norm(state.amplitudes(k)) /
             angular_frequency(*ordered[k]);
  return phi;
}

/// Input state of the vacuum-seeded interaction: real pump and stimulation
/// fields, signal seed in phase, idler seed in quadrature so that the
/// amplified idler contribution adds coherently to the signal.
template <typename Scalar>
FieldStateT<Scalar> seeded_input_state(const InteractionConfigT<Scalar>& cfg) {
  using Complex = std::complex<Scalar>;
  const auto [vac_s, vac_i] = vacuum_seeds(cfg);
  FieldStateT<Scalar> st;
  st.amplitudes(kPump) = Complex(pump_field(cfg));
  // The overlap factor scales the gain linearly; fold it into the stimulation field.
  st.amplitudes(kStim) = Complex(overlap(cfg) * stimulation_field(cfg));
  st.amplitudes(kSignal) = Complex(vac_s);
  st.amplitudes(kIdler) = Complex(0, vac_i);
  return st;
}

/// Instantaneous triplet rate from the generated signal field E_s(L) - E_s(0),
/// with the same prefactor as the closed form. Works for any delta_k.
template <typename Scalar>
Scalar integrated_triplet_rate(const InteractionConfigT<Scalar>& cfg,
                               PropagationOptions options = {}) {
  using C = PhysicalConstants<Scalar>;
  validate(cfg);
  if (cfg.convention != BetaConvention::signal_idler)
    throw ConfigError("integrated_triplet_rate: only the signal/idler coupling is integrable");
  const FieldStateT<Scalar> in = seeded_input_state(cfg);
  const FieldStateT<Scalar> out = propagate_coupled_waves(in, cfg, options);
  const Scalar generated = std::norm(out.amplitudes(kSignal) - in.amplitudes(kSignal));
  const auto& s = cfg.modes.signal;
  return C::eps0 * s.refractive_index * C::c * cfg.cross_section /
         (4 * C::hbar * angular_frequency(s)) * generated;
}

}  // namespace tripletgen
