#include "tripletgen/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tripletgen/coupled_waves.hpp"
#include "tripletgen/errors.hpp"

namespace tripletgen {

std::string_view to_string(SetLabel s) { return s == SetLabel::A ? "A" : "B"; }

SetLabel parse_set_label(std::string_view text) {
  if (text == "A") return SetLabel::A;
  if (text == "B") return SetLabel::B;
  throw ConfigError("unknown data set label \"" + std::string(text) + "\"");
}

void validate(const DataPoint& p) {
  if (!(p.pump_energy_uJ > 0 && p.stimulation_energy_uJ > 0))
    throw DomainError("data point: energies must be > 0");
  if (!(p.eta_hat >= 0)) throw DomainError("data point: eta must be >= 0");
  if (!(p.pump_energy_err >= 0 && p.stimulation_energy_err >= 0 && p.eta_err >= 0))
    throw DomainError("data point: uncertainties must be >= 0");
}

std::vector<DataPoint> builtin_table1() {
  constexpr double milli = 1e-3;
  auto a = [](double sti, double sti_err, double eta, double eta_err) {
    return DataPoint{SetLabel::A, 19.3, 4.7, sti, sti_err, eta * milli, eta_err * milli};
  };
  auto b = [](double p, double p_err, double eta, double eta_err) {
    return DataPoint{SetLabel::B, p, p_err, 19.0, 3.8, eta * milli, eta_err * milli};
  };
  return {a(3.04, 0.6, 0.567, 0.125), a(5.01, 0.8, 1.77, 0.125), a(7.4, 1.3, 5.67, 0.118),
          a(9.0, 1.9, 8.78, 1.40),    a(11.2, 1.6, 14.3, 3.42),  b(8.1, 2.5, 1.33, 0.656),
          b(8.8, 2.2, 3.03, 1.24),    b(9.5, 3.1, 4.33, 1.65)};
}

double model_triplets_per_pulse(const ExperimentConfig& cfg, double pump_energy_uJ,
                                double stimulation_energy_uJ) {
  const InteractionConfig ic = make_interaction(cfg, pump_energy_uJ * 1e-6, stimulation_energy_uJ * 1e-6);
  if (ic.delta_k == 0) return triplet_flux_full(ic, cfg.tau_eff).triplets_per_pulse;
  return triplets_per_pulse(integrated_triplet_rate(ic), ic.pump_geometry, cfg.tau_eff);
}

namespace {

double energy_product(const DataPoint& p) { return p.pump_energy_uJ * p.stimulation_energy_uJ; }

}  // namespace

void normalize_rows(std::vector<ReportRow>& rows) {
  for (SetLabel set : {SetLabel::A, SetLabel::B}) {
    const ReportRow* ref = nullptr;
    for (const auto& r : rows) {
      if (r.set != set) continue;
      if (ref == nullptr || r.xi_p_uJ * r.xi_sti_uJ < ref->xi_p_uJ * ref->xi_sti_uJ) ref = &r;
    }
    if (ref == nullptr) continue;
    const double meas0 = ref->n_measured;
    const double model0 = ref->n_model;
    if (!(meas0 > 0) || !(model0 > 0))
      throw DomainError("normalization: reference point of set " + std::string(to_string(set)) +
                        " has zero flux");
    for (auto& r : rows) {
      if (r.set != set) continue;
      r.norm_measured = r.n_measured / meas0;
      r.norm_model = r.n_model / model0;
      r.residual = r.norm_measured - r.norm_model;
    }
  }
}

Interval normalized_interval(std::span<const ReportRow> rows, std::size_t k) {
  if (k >= rows.size()) throw DomainError("normalized_interval: row index out of range");
  const ReportRow& r = rows[k];
  const ReportRow* ref = nullptr;
  for (const auto& c : rows)
    if (c.set == r.set && (ref == nullptr || c.xi_p_uJ * c.xi_sti_uJ < ref->xi_p_uJ * ref->xi_sti_uJ)) ref = &c;
  if (!(r.n_measured > 0) || !(ref->n_measured > 0))
    throw DomainError("normalized_interval: measured flux must be > 0");

  const double down = (r.n_measured - r.n_meas_lo) / r.n_measured;
  const double up = (r.n_meas_hi - r.n_measured) / r.n_measured;
  if (ref == &r) return {r.norm_measured * (1 - down), r.norm_measured * (1 + up)};
  const double ref_down = (ref->n_measured - ref->n_meas_lo) / ref->n_measured;
  const double ref_up = (ref->n_meas_hi - ref->n_measured) / ref->n_measured;
  return {r.norm_measured * std::max(0.0, 1 - std::hypot(down, ref_up)),
          r.norm_measured * (1 + std::hypot(up, ref_down))};
}

std::vector<ReportRow> run_set(SetLabel set, const ExperimentConfig& cfg, std::span<const DataPoint> data,
                               double transfer_function) {
  std::vector<DataPoint> points;
  for (const auto& p : data)
    if (p.set == set) points.push_back(p);
  if (points.empty()) throw ConfigError("no data points for set " + std::string(to_string(set)));
  std::stable_sort(points.begin(), points.end(),
                   [](const DataPoint& x, const DataPoint& y) { return energy_product(x) < energy_product(y); });

  std::vector<ReportRow> rows;
  rows.reserve(points.size());
  for (const auto& p : points) {
    validate(p);
    ReportRow r;
    r.set = p.set;
    r.xi_p_uJ = p.pump_energy_uJ;
    r.xi_p_err = p.pump_energy_err;
    r.xi_sti_uJ = p.stimulation_energy_uJ;
    r.xi_sti_err = p.stimulation_energy_err;
    r.eta_hat = p.eta_hat;
    r.eta_err = p.eta_err;
    r.n_measured = invert_coincidence_fraction(p.eta_hat, transfer_function);
    // Monotone map, so the interval endpoints are the images of eta -/+ sigma.
    r.n_meas_lo = invert_coincidence_fraction(std::max(0.0, p.eta_hat - p.eta_err), transfer_function);
    r.n_meas_hi = invert_coincidence_fraction(p.eta_hat + p.eta_err, transfer_function);
    r.n_model = model_triplets_per_pulse(cfg, p.pump_energy_uJ, p.stimulation_energy_uJ);
    rows.push_back(r);
  }
  normalize_rows(rows);
  return rows;
}

std::vector<AbsolutePoint> absolute_curve(const ExperimentConfig& cfg, std::span<const DataPoint> data,
                                          double transfer_function) {
  const double rep = cfg.pump_geometry.repetition_rate;
  std::vector<AbsolutePoint> out;
  for (SetLabel set : {SetLabel::A, SetLabel::B}) {
    const bool any = std::any_of(data.begin(), data.end(), [&](const DataPoint& p) { return p.set == set; });
    if (!any) continue;
    for (const auto& r : run_set(set, cfg, data, transfer_function))
      out.push_back({r.set, r.xi_p_uJ * r.xi_sti_uJ, r.n_model * rep, r.n_measured * rep,
                     r.n_meas_lo * rep, r.n_meas_hi * rep});
  }
  std::stable_sort(out.begin(), out.end(), [](const AbsolutePoint& x, const AbsolutePoint& y) {
    return x.energy_product_uJ2 < y.energy_product_uJ2;
  });
  return out;
}

double fit_scale_factor(std::span<const AbsolutePoint> points) {
  double num = 0, den = 0;
  for (const auto& p : points) {
    const double sigma = (p.measured_hi - p.measured_lo) / 2;
    if (!(sigma > 0)) throw DomainError("fit_scale_factor: measured interval has zero width");
    const double w = 1.0 / (sigma * sigma);
    num += w * p.model_per_second * p.measured_per_second;
    den += w * p.model_per_second * p.model_per_second;
  }
  if (!(den > 0)) throw NumericalError("fit_scale_factor: model curve is identically zero");
  return num / den;
}

TransferFitResult fit_transfer_function_to_data(const ExperimentConfig& cfg,
                                                std::span<const DataPoint> data) {
  std::vector<FitObservation> obs;
  obs.reserve(data.size());
  for (const auto& p : data) {
    validate(p);
    obs.push_back({model_triplets_per_pulse(cfg, p.pump_energy_uJ, p.stimulation_energy_uJ), p.eta_hat,
                   p.eta_err});
  }
  return fit_transfer_function(obs);
}

}  // namespace tripletgen
