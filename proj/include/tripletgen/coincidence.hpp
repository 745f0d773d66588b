#pragma once

// Two-detector coincidence protocol: the signal and idler photons of each
// triplet go to separate SNSPDs, each detector clicks at most once per pulse,
// and a coincidence is a pulse in which both clicked.

#include <cstdint>
#include <optional>

#include <Eigen/Core>

namespace tripletgen {

enum class PhotonStatistics { poisson, thermal };

/// How the photon numbers reaching the two detectors are drawn each pulse.
///  - independent: each arm receives its own draw of the triplet-number
///    distribution. With Poisson statistics the arms are then independent and
///    the coincidence fraction is exactly (1 - exp(-N T_F))^2, the relation
///    the inversion formula rests on.
///  - shared_triplets: one triplet number per pulse feeds both arms, so the
///    arms are correlated through it. Useful to quantify how far the inversion
///    formula is from a fully correlated source.
enum class ArmCorrelation { independent, shared_triplets };

struct DetectionSetup {
  double transfer_function = 0.11;                 // per-photon efficiency, both arms
  std::optional<double> idler_transfer_function;   // asymmetric second arm
  double rep_rate = 10.0;                          // Hz
  double coincidence_window = 100e-12;             // s
  double dark_coincidence_rate = 0.0;              // coincidences/s
  PhotonStatistics statistics = PhotonStatistics::poisson;
  ArmCorrelation arms = ArmCorrelation::independent;
};

void validate(const DetectionSetup& setup);

struct Interval {
  double low = 0;
  double high = 0;
};

struct CoincidenceResult {
  std::uint64_t pulses = 0;
  std::uint64_t coincidences = 0;
  double eta_hat = 0;
  Interval eta_ci;
  std::uint64_t rng_seed = 0;
};

/// Mean triplets per pulse from a raw coincidence fraction, -ln(1 - sqrt(eta)) / T_F.
double invert_coincidence_fraction(double eta_hat, double transfer_function);

/// Expected coincidence fraction for Poisson triplets, (1 - exp(-N T_F))^2.
double forward_coincidence_fraction(double n_per_pulse, double transfer_function);

template <typename Derived>
auto forward_coincidence_fraction(const Eigen::ArrayBase<Derived>& n_per_pulse,
                                  typename Derived::Scalar transfer_function) {
  using Scalar = typename Derived::Scalar;
  return (Scalar(1) - (-transfer_function * n_per_pulse).exp()).square();
}

/// Probability of a dark coincidence within one pulse period.
double dark_coincidence_probability(const DetectionSetup& setup);

/// Fraction observed when independent dark coincidences are added to a true fraction.
double with_dark_coincidences(double eta, double dark_probability);

/// Wilson score interval for k successes in n trials.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

/// Monte Carlo of n_pulses pulses. threads = 0 uses the hardware concurrency;
/// the result does not depend on the thread count.
CoincidenceResult simulate_pulses(double n_mean, const DetectionSetup& setup, std::uint64_t n_pulses,
                                  std::uint64_t seed, unsigned threads = 0);

/// Simulates at n_true and inverts the measured fraction back to triplets/pulse.
double estimator_roundtrip(double n_true, const DetectionSetup& setup, std::uint64_t n_pulses,
                           std::uint64_t seed, unsigned threads = 0);

struct CriterionCheck {
  bool passed = false;
  double margin = 0;   // 1 - n; positive when the criterion holds
};

/// True coincidences dominate only while fewer than one triplet per pulse is produced.
CriterionCheck check_single_triplet_criterion(double n_per_pulse);

}  // namespace tripletgen
