#include "tripletgen/self_check.hpp"

#include <algorithm>
#include <cmath>

#include "tripletgen/coincidence.hpp"
#include "tripletgen/coupled_waves.hpp"

namespace tripletgen {

namespace {

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

CheckResult make(std::string name, double value, double tol) {
  return {std::move(name), value, tol, value <= tol};
}

}  // namespace

std::vector<CheckResult> self_consistency_checks(const ExperimentConfig& cfg) {
  std::vector<CheckResult> out;
  InteractionConfig ic = make_interaction(cfg, cfg.pump_energy, cfg.stimulation_energy);
  ic.delta_k = 0;
  ic.convention = BetaConvention::signal_idler;

  {
    InteractionConfig sym = ic;
    sym.modes.idler = sym.modes.signal;
    sym.modes.idler.role = Role::idler;
    const double length = sym.crystal.length;
    double worst = 0;
    for (double bl : {0.01, 0.1, 0.5, 1.0, 3.0}) {
      const double beta = bl / length;
      worst = std::max(worst, relative(triplet_rate_full(sym, beta),
                                       triplet_flux_simplified(beta, length, sym.delta_omega)));
    }
    out.push_back(make("closed form reduces to symmetric form (max rel. error)", worst, 1e-12));
  }
  {
    const double closed = triplet_rate_full(ic, gain_parameter_beta(ic));
    const double integrated = integrated_triplet_rate(ic, {false, 10000});
    out.push_back(make("RK4 (UPA, 1e4 steps) vs closed form (rel. error)", relative(integrated, closed), 1e-6));
  }
  {
    // Strongly coupled case so that every wave's photon flux changes visibly.
    FieldState in;
    in.amplitudes << 3e7, 3e7, 3e7, std::complex<double>(0, 3e7);
    const FieldState outstate = propagate_coupled_waves(in, ic, {true, 10000});
    const auto d = (photon_flux_proxies(outstate, ic.modes) - photon_flux_proxies(in, ic.modes)).eval();
    const double ds = d(kSignal);
    const double worst = std::max({std::abs(d(kIdler) - ds), std::abs(d(kStim) - ds), std::abs(d(kPump) + ds)}) /
                         std::abs(ds);
    out.push_back(make("Manley-Rowe balance, depleted integrator (rel. to dPhi_s)", worst, 1e-8));
  }
  {
    const FieldState in = seeded_input_state(ic);
    const FieldState outstate = propagate_coupled_waves(in, ic, {true, 10000});
    const double change = std::abs(std::abs(outstate.amplitudes(kPump)) / std::abs(in.amplitudes(kPump)) - 1);
    out.push_back(make("pump depletion at configured energies (rel.)", change, 1e-3));
  }
  {
    const double tf = cfg.detection.transfer_function;
    double worst = 0;
    for (double n : {0.01, 0.1, 0.5, 1.0, 5.0, 10.0})
      worst = std::max(worst, relative(invert_coincidence_fraction(forward_coincidence_fraction(n, tf), tf), n));
    out.push_back(make("coincidence inversion roundtrip (max rel. error)", worst, 1e-10));
  }
  return out;
}

}  // namespace tripletgen
