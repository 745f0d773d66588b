#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "tripletgen/config.hpp"
#include "tripletgen/transfer_fit.hpp"

namespace tripletgen {

enum class SetLabel { A, B };

std::string_view to_string(SetLabel s);
SetLabel parse_set_label(std::string_view text);

/// One measured energy combination. Energies in uJ, eta as a raw fraction per pulse.
struct DataPoint {
  SetLabel set = SetLabel::A;
  double pump_energy_uJ = 0;
  double pump_energy_err = 0;
  double stimulation_energy_uJ = 0;
  double stimulation_energy_err = 0;
  double eta_hat = 0;
  double eta_err = 0;
};

void validate(const DataPoint& p);

/// The eight measured points (five at fixed pump energy, three at fixed stimulation energy).
std::vector<DataPoint> builtin_table1();

struct ReportRow {
  SetLabel set = SetLabel::A;
  double xi_p_uJ = 0;
  double xi_p_err = 0;
  double xi_sti_uJ = 0;
  double xi_sti_err = 0;
  double eta_hat = 0;
  double eta_err = 0;
  double n_measured = 0;   // triplets/pulse from the coincidence inversion
  double n_meas_lo = 0;
  double n_meas_hi = 0;
  double n_model = 0;      // triplets/pulse from the semiclassical model
  double norm_measured = 0;
  double norm_model = 0;
  double residual = 0;     // norm_measured - norm_model
};

/// Model triplets per pulse at the given energies (uJ). Uses the closed form at
/// delta_k = 0 and the coupled-wave integrator otherwise.
double model_triplets_per_pulse(const ExperimentConfig& cfg, double pump_energy_uJ,
                                double stimulation_energy_uJ);

/// Measured and model columns for one set, normalized to its lowest-energy point.
std::vector<ReportRow> run_set(SetLabel set, const ExperimentConfig& cfg,
                               std::span<const DataPoint> data, double transfer_function);

/// Rescales both normalized columns to the lowest-energy row of each set.
void normalize_rows(std::vector<ReportRow>& rows);

/// Vertical interval of row k's normalized measured value. The value is a ratio of
/// two measurements, so the relative uncertainties of the row and of its set's
/// reference row add in quadrature (upper side: row up, reference down). The
/// reference row itself keeps its own relative interval.
Interval normalized_interval(std::span<const ReportRow> rows, std::size_t k);

struct AbsolutePoint {
  SetLabel set = SetLabel::A;
  double energy_product_uJ2 = 0;
  double model_per_second = 0;
  double measured_per_second = 0;
  double measured_lo = 0;
  double measured_hi = 0;
};

/// Model and measured triplets/s for every point, sorted by xi_p * xi_sti.
std::vector<AbsolutePoint> absolute_curve(const ExperimentConfig& cfg, std::span<const DataPoint> data,
                                          double transfer_function);

/// Weighted least-squares factor s minimizing sum ((measured - s model) / sigma)^2,
/// sigma being the half-width of the measured interval.
double fit_scale_factor(std::span<const AbsolutePoint> points);

/// Transfer-function fit of the model to the measured fractions.
TransferFitResult fit_transfer_function_to_data(const ExperimentConfig& cfg,
                                                std::span<const DataPoint> data);

}  // namespace tripletgen
