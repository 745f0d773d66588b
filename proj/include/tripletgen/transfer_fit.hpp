#pragma once

#include <span>

#include "tripletgen/coincidence.hpp"

namespace tripletgen {

/// One point for the transfer-function fit: model triplets/pulse against a
/// measured coincidence fraction with its standard deviation.
struct FitObservation {
  double predicted_n = 0;
  double eta = 0;
  double sigma = 0;
};

struct TransferFitResult {
  double transfer_function = 0;
  Interval interval;          // 1-sigma; one-sided when pinned at a bound
  double chi2 = 0;
  bool at_lower_bound = false;
  bool at_upper_bound = false;
};

struct FitBounds {
  double low = 0.02;
  double high = 0.20;
};

/// Weighted least squares of eta_i - (1 - exp(-N_i T_F))^2 over T_F in the bounds.
TransferFitResult fit_transfer_function(std::span<const FitObservation> data, FitBounds bounds = {});

}  // namespace tripletgen
