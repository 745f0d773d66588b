#include "tripletgen/cli.hpp"

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tripletgen/coincidence.hpp"
#include "tripletgen/config.hpp"
#include "tripletgen/errors.hpp"
#include "tripletgen/experiment.hpp"
#include "tripletgen/report_io.hpp"
#include "tripletgen/self_check.hpp"
#include "tripletgen/triplet_model.hpp"

namespace tripletgen {

namespace {

struct Options {
  std::string config_path;
  std::optional<double> tf;
  std::optional<double> gamma;
  std::uint64_t seed = 42;
  std::uint64_t pulses = 1000000;
  std::string out_dir;
  std::optional<double> xi_p_uJ;
  std::optional<double> xi_sti_uJ;
  double n_mean = 0.5;
  unsigned threads = 0;
  std::string data_path;
};

ExperimentConfig resolve_config(const Options& o) {
  ExperimentConfig cfg = o.config_path.empty() ? paper_default_config() : load_config(o.config_path);
  if (o.tf) {
    if (!(*o.tf > 0 && *o.tf <= 1)) throw ConfigError("--tf must lie in (0, 1]");
    cfg.detection.transfer_function = *o.tf;
    cfg.fit_transfer_function = false;
  }
  if (o.gamma) {
    if (!(*o.gamma > 0 && *o.gamma <= 1)) throw ConfigError("--gamma must lie in (0, 1]");
    cfg.gamma_override = *o.gamma;
  }
  if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;
  return cfg;
}

std::vector<DataPoint> resolve_data(const Options& o) {
  return o.data_path.empty() ? builtin_table1() : load_dataset_csv(o.data_path);
}

std::string sci(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

int run_model(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve_config(o);
  const double xi_p = o.xi_p_uJ.value_or(cfg.pump_energy * 1e6);
  const double xi_sti = o.xi_sti_uJ.value_or(cfg.stimulation_energy * 1e6);
  const InteractionConfig ic = make_interaction(cfg, xi_p * 1e-6, xi_sti * 1e-6);
  const double beta = gain_parameter_beta(ic);
  const auto [vac_s, vac_i] = vacuum_seeds(ic);
  const double per_pulse = model_triplets_per_pulse(cfg, xi_p, xi_sti);
  const double rep = cfg.pump_geometry.repetition_rate;
  const double n_pump = photons_per_second(ic.pump_energy, ic.modes.pump.wavelength, rep);
  const double n_sti = photons_per_second(ic.stimulation_energy, ic.modes.stimulation.wavelength, rep);

  out << "xi_p_uJ " << sci(xi_p) << "\n"
      << "xi_sti_uJ " << sci(xi_sti) << "\n"
      << "gamma " << sci(overlap(ic)) << "\n"
      << "E_p_V_per_m " << sci(pump_field(ic)) << "\n"
      << "E_sti_V_per_m " << sci(stimulation_field(ic)) << "\n"
      << "vacuum_E_s_V_per_m " << sci(vac_s) << "\n"
      << "vacuum_E_i_V_per_m " << sci(vac_i) << "\n"
      << "beta_per_m " << sci(beta) << "\n"
      << "beta_L " << sci(beta * ic.crystal.length) << "\n";
  if (ic.delta_k == 0) out << "instantaneous_rate_per_s " << sci(triplet_rate_full(ic, beta)) << "\n";
  out << "triplets_per_pulse " << sci(per_pulse) << "\n"
      << "triplets_per_s " << sci(per_pulse * rep) << "\n"
      << "expected_coincidence_fraction " << sci(forward_coincidence_fraction(per_pulse, cfg.detection.transfer_function))
      << "\n"
      << "pump_photons_per_s " << sci(n_pump) << "\n"
      << "stimulation_photons_per_s " << sci(n_sti) << "\n"
      << "efficiency_vs_pump " << sci(quantum_efficiency(per_pulse * rep, n_pump)) << "\n"
      << "efficiency_vs_stimulation " << sci(quantum_efficiency(per_pulse * rep, n_sti)) << "\n";
  return 0;
}

double resolve_transfer_function(const ExperimentConfig& cfg, std::span<const DataPoint> data, std::ostream& out) {
  if (!cfg.fit_transfer_function) return cfg.detection.transfer_function;
  const TransferFitResult fit = fit_transfer_function_to_data(cfg, data);
  out << "fitted T_F " << sci(fit.transfer_function) << " [" << sci(fit.interval.low) << ", "
      << sci(fit.interval.high) << "]\n";
  return fit.transfer_function;
}

int run_report(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve_config(o);
  const auto data = resolve_data(o);
  const double tf = resolve_transfer_function(cfg, data, out);
  const ReportSummary s = write_report(cfg, data, tf, cfg.output_dir);

  out << "T_F " << sci(tf) << "\n";
  out << "set xi_p_uJ xi_sti_uJ n_measured [lo, hi] n_model norm_measured norm_model\n";
  for (const auto* rows : {&s.set_a, &s.set_b})
    for (const auto& r : *rows)
      out << to_string(r.set) << ' ' << sci(r.xi_p_uJ) << ' ' << sci(r.xi_sti_uJ) << ' ' << sci(r.n_measured, 4)
          << " [" << sci(r.n_meas_lo, 4) << ", " << sci(r.n_meas_hi, 4) << "] " << sci(r.n_model, 4) << ' '
          << sci(r.norm_measured, 4) << ' ' << sci(r.norm_model, 4) << "\n";
  out << "measured/model scale factor " << sci(s.scale_factor, 4) << "\n";
  for (const auto& f : s.files) out << "wrote " << f.string() << "\n";
  return 0;
}

int run_simulate(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve_config(o);
  const CoincidenceResult r = simulate_pulses(o.n_mean, cfg.detection, o.pulses, o.seed, o.threads);
  out << "seed " << r.rng_seed << "\n"
      << "n_mean " << sci(o.n_mean) << "\n"
      << "transfer_function " << sci(cfg.detection.transfer_function) << "\n"
      << "pulses " << r.pulses << "\n"
      << "coincidences " << r.coincidences << "\n"
      << "eta_hat " << sci(r.eta_hat, 10) << "\n"
      << "eta_ci95 " << sci(r.eta_ci.low, 10) << ' ' << sci(r.eta_ci.high, 10) << "\n"
      << "expected_eta " << sci(forward_coincidence_fraction(o.n_mean, cfg.detection.transfer_function), 10) << "\n";
  if (r.coincidences < r.pulses)
    out << "estimated_n_per_pulse " << sci(invert_coincidence_fraction(r.eta_hat, cfg.detection.transfer_function), 10)
        << "\n";
  return 0;
}

int run_fit(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve_config(o);
  const auto data = resolve_data(o);
  const TransferFitResult fit = fit_transfer_function_to_data(cfg, data);
  out << "T_F " << sci(fit.transfer_function) << "\n"
      << "interval " << sci(fit.interval.low) << ' ' << sci(fit.interval.high) << "\n"
      << "chi2 " << sci(fit.chi2) << "\n";
  if (fit.at_lower_bound) out << "pinned at lower bound\n";
  if (fit.at_upper_bound) out << "pinned at upper bound\n";
  return 0;
}

int run_check(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve_config(o);
  bool ok = true;
  for (const auto& c : self_consistency_checks(cfg)) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << sci(c.value, 3) << " (tol " << sci(c.tolerance, 3)
        << ")\n";
    ok = ok && c.passed;
  }
  return ok ? 0 : 2;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stimulated photon-triplet generation: model, coincidence simulation and data comparison", "tripletgen"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--config", o.config_path, "JSON configuration file");
  app.add_option("--tf", o.tf, "detection transfer function T_F (disables fitting)");
  app.add_option("--gamma", o.gamma, "overlap factor override");
  app.add_option("--seed", o.seed, "Monte Carlo seed");
  app.add_option("--pulses", o.pulses, "Monte Carlo pulse count");
  app.add_option("--out", o.out_dir, "output directory");

  auto* model = app.add_subcommand("model", "evaluate the triplet flux at given energies");
  model->add_option("--xi-p", o.xi_p_uJ, "pump energy (uJ)");
  model->add_option("--xi-sti", o.xi_sti_uJ, "stimulation energy (uJ)");
  auto* report = app.add_subcommand("report", "compare model and measurements, write CSV and SVG");
  report->add_option("--data", o.data_path, "dataset CSV (defaults to the built-in table)");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo of the coincidence protocol");
  simulate->add_option("--n-mean", o.n_mean, "mean triplets per pulse");
  simulate->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  auto* fit = app.add_subcommand("fit-tf", "fit the transfer function to the dataset");
  fit->add_option("--data", o.data_path, "dataset CSV (defaults to the built-in table)");
  auto* check = app.add_subcommand("check", "run the model self-consistency suite");
  auto* show = app.add_subcommand("config", "print the resolved configuration as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    if (model->parsed()) return run_model(o, out);
    if (report->parsed()) return run_report(o, out);
    if (simulate->parsed()) return run_simulate(o, out);
    if (fit->parsed()) return run_fit(o, out);
    if (check->parsed()) return run_check(o, out);
    if (show->parsed()) {
      out << config_to_json(resolve_config(o));
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 2;
  }
  err << app.help();
  return 1;
}

}  // namespace tripletgen
