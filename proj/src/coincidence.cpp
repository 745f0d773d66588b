#include "tripletgen/coincidence.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "tripletgen/counter_rng.hpp"
#include "tripletgen/errors.hpp"

namespace tripletgen {

void validate(const DetectionSetup& setup) {
  auto in_unit = [](double t) { return t > 0 && t <= 1; };
  if (!in_unit(setup.transfer_function)) throw DomainError("detection: transfer function must lie in (0, 1]");
  if (setup.idler_transfer_function && !in_unit(*setup.idler_transfer_function))
    throw DomainError("detection: idler transfer function must lie in (0, 1]");
  if (!(setup.rep_rate > 0)) throw DomainError("detection: repetition rate must be > 0");
  if (!(setup.coincidence_window > 0)) throw DomainError("detection: coincidence window must be > 0");
  if (!(setup.dark_coincidence_rate >= 0)) throw DomainError("detection: dark rate must be >= 0");
}

double invert_coincidence_fraction(double eta_hat, double transfer_function) {
  if (!(eta_hat >= 0)) throw DomainError("invert_coincidence_fraction: eta must be >= 0");
  if (!(eta_hat < 1)) throw DomainError("invert_coincidence_fraction: eta must be < 1");
  if (!(transfer_function > 0 && transfer_function <= 1))
    throw DomainError("invert_coincidence_fraction: transfer function must lie in (0, 1]");
  return -std::log1p(-std::sqrt(eta_hat)) / transfer_function;
}

double forward_coincidence_fraction(double n_per_pulse, double transfer_function) {
  if (!(n_per_pulse >= 0)) throw DomainError("forward_coincidence_fraction: n must be >= 0");
  const double single = -std::expm1(-n_per_pulse * transfer_function);
  return single * single;
}

double dark_coincidence_probability(const DetectionSetup& setup) {
  validate(setup);
  // The quoted noise is already a coincidence rate; a pulse period collects rate / f_rep.
  return std::min(1.0, setup.dark_coincidence_rate / setup.rep_rate);
}

double with_dark_coincidences(double eta, double dark_probability) {
  return 1.0 - (1.0 - eta) * (1.0 - dark_probability);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw DomainError("wilson_interval: no trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {successes == 0 ? 0.0 : std::max(0.0, centre - half),
          successes == trials ? 1.0 : std::min(1.0, centre + half)};
}

namespace {

struct PulseModel {
  double n_mean;
  double t_signal;
  double t_idler;
  double p_dark;
  PhotonStatistics statistics;
  ArmCorrelation arms;
  std::uint64_t seed;

  std::uint64_t draw_triplets(CounterEngine& rng) const {
    if (n_mean <= 0) return 0;
    if (statistics == PhotonStatistics::poisson) return std::poisson_distribution<std::uint64_t>(n_mean)(rng);
    return std::geometric_distribution<std::uint64_t>(1.0 / (1.0 + n_mean))(rng);
  }

  // Each photon reaches its detector with probability t; the detector
  // saturates after the first click of the pulse.
  static bool clicks(std::uint64_t photons, double t, CounterEngine& rng) {
    return photons > 0 && std::binomial_distribution<std::uint64_t>(photons, t)(rng) > 0;
  }

  bool coincidence(std::uint64_t pulse) const {
    CounterEngine rng(seed, pulse);
    const std::uint64_t signal_photons = draw_triplets(rng);
    const std::uint64_t idler_photons = arms == ArmCorrelation::shared_triplets ? signal_photons : draw_triplets(rng);
    const bool signal_click = clicks(signal_photons, t_signal, rng);
    const bool idler_click = clicks(idler_photons, t_idler, rng);
    const bool dark = p_dark > 0 && std::bernoulli_distribution(p_dark)(rng);
    return (signal_click && idler_click) || dark;
  }
};

}  // namespace

CoincidenceResult simulate_pulses(double n_mean, const DetectionSetup& setup, std::uint64_t n_pulses,
                                  std::uint64_t seed, unsigned threads) {
  validate(setup);
  if (n_pulses < 1) throw DomainError("simulate_pulses: at least one pulse required");
  if (!(n_mean >= 0) || !std::isfinite(n_mean)) throw DomainError("simulate_pulses: n_mean must be >= 0");

  const PulseModel model{n_mean,
                         setup.transfer_function,
                         setup.idler_transfer_function.value_or(setup.transfer_function),
                         dark_coincidence_probability(setup),
                         setup.statistics,
                         setup.arms,
                         seed};

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_pulses));

  std::vector<std::uint64_t> partial(threads, 0);
  auto work = [&](unsigned w) {
    const std::uint64_t begin = n_pulses * w / threads;
    const std::uint64_t end = n_pulses * (w + 1) / threads;
    std::uint64_t count = 0;
    for (std::uint64_t p = begin; p < end; ++p) count += model.coincidence(p);
    partial[w] = count;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  CoincidenceResult r;
  r.pulses = n_pulses;
  for (auto c : partial) r.coincidences += c;
  r.eta_hat = static_cast<double>(r.coincidences) / static_cast<double>(n_pulses);
  r.eta_ci = wilson_interval(r.coincidences, n_pulses);
  r.rng_seed = seed;
  return r;
}

double estimator_roundtrip(double n_true, const DetectionSetup& setup, std::uint64_t n_pulses,
                           std::uint64_t seed, unsigned threads) {
  const CoincidenceResult r = simulate_pulses(n_true, setup, n_pulses, seed, threads);
  if (r.coincidences == r.pulses)
    throw NumericalError("estimator_roundtrip: every pulse produced a coincidence; fraction not invertible");
  return invert_coincidence_fraction(r.eta_hat, setup.transfer_function);
}

CriterionCheck check_single_triplet_criterion(double n_per_pulse) {
  if (!(n_per_pulse >= 0)) throw DomainError("check_single_triplet_criterion: n must be >= 0");
  return {n_per_pulse < 1.0, 1.0 - n_per_pulse};
}

}  // namespace tripletgen
