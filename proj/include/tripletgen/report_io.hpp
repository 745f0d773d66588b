#pragma once

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tripletgen/experiment.hpp"

namespace tripletgen {

/// Writes to a sibling temporary and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

inline constexpr const char* kCsvHeader =
    "set,xi_p_uJ,xi_p_err,xi_sti_uJ,xi_sti_err,eta_hat,eta_err,n_measured,n_meas_lo,n_meas_hi,"
    "n_model,norm_measured,norm_model,residual";

std::string rows_to_csv(std::span<const ReportRow> rows);
void emit_csv(std::span<const ReportRow> rows, const std::filesystem::path& path);

/// Parses text in the emit_csv schema.
std::vector<ReportRow> parse_csv_rows(const std::string& text);

/// Loads a dataset in the emit_csv schema; only the input columns
/// (set, energies, eta and their uncertainties) are used.
std::vector<DataPoint> load_dataset_csv(const std::filesystem::path& path);

enum class AxisQuantity { stimulation_energy, pump_energy, energy_product };
enum class ValueQuantity { normalized, triplets_per_second };

struct AxesSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  AxisQuantity x = AxisQuantity::stimulation_energy;
  ValueQuantity y = ValueQuantity::normalized;
  bool log_x = false;
  bool log_y = false;
  double repetition_rate = 10.0;   // converts per-pulse columns to per-second
  std::function<double(double)> model;   // model value at an abscissa, sampled at 100 points
};

std::string render_svg_plot(std::span<const ReportRow> rows, const AxesSpec& axes);
void emit_svg_plot(std::span<const ReportRow> rows, const AxesSpec& axes, const std::filesystem::path& path);

}  // namespace tripletgen

namespace tripletgen {

struct ReportSummary {
  double transfer_function = 0;
  std::vector<ReportRow> set_a;
  std::vector<ReportRow> set_b;
  std::vector<AbsolutePoint> absolute;
  double scale_factor = 0;
  std::vector<std::filesystem::path> files;
};

/// Full comparison: per-set CSVs, normalized plots for each set and the
/// absolute-flux plot against the energy product, all under out_dir.
ReportSummary write_report(const ExperimentConfig& cfg, std::span<const DataPoint> data,
                           double transfer_function, const std::filesystem::path& out_dir);

}  // namespace tripletgen
