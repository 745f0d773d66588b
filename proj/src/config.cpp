#include "tripletgen/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "tripletgen/errors.hpp"

namespace tripletgen {

using nlohmann::json;

ExperimentConfig paper_default_config() {
  ExperimentConfig c;
  c.pump_spectral_width_nm = 0.5;
  c.stimulation_spectral_width_nm = 3.2;
  c.modes.pump = {Role::pump, 532e-9, 1.79, Polarization::y,
                  spectral_width_to_rad(0.5e-9, 532e-9)};
  c.modes.stimulation = {Role::stimulation, 1491e-9, 1.82, Polarization::z,
                         spectral_width_to_rad(3.2e-9, 1491e-9)};
  c.delta_omega = 2.489e12;
  c.modes.signal = {Role::signal, 1654e-9, 1.732, Polarization::y, c.delta_omega};
  c.modes.idler = {Role::idler, 1654e-9, 1.813, Polarization::z, c.delta_omega};
  c.pump_geometry = {47.5e-6, 15e-12, 10.0};
  c.stimulation_geometry = {72.5e-6, 15e-12, 10.0};
  c.crystal = {0.01, 7.8e-22, "x"};
  c.pump_energy = 19.3e-6;
  c.stimulation_energy = 11.2e-6;
  c.gamma_override = 0.537;
  c.detection.transfer_function = 0.11;
  c.detection.rep_rate = 10.0;
  c.detection.coincidence_window = 100e-12;
  c.detection.dark_coincidence_rate = 1e-7;
  return c;
}

double effective_cross_section(const ExperimentConfig& cfg) {
  return cfg.cross_section_policy == CrossSectionPolicy::pump_waist
             ? pump_disk_cross_section(cfg.pump_geometry.waist_radius)
             : cfg.cross_section;
}

InteractionConfig make_interaction(const ExperimentConfig& cfg, double pump_energy,
                                   double stimulation_energy) {
  InteractionConfig ic;
  ic.modes = cfg.modes;
  ic.pump_geometry = cfg.pump_geometry;
  ic.stimulation_geometry = cfg.stimulation_geometry;
  ic.crystal = cfg.crystal;
  ic.pump_energy = pump_energy;
  ic.stimulation_energy = stimulation_energy;
  ic.gamma_override = cfg.gamma_override;
  ic.delta_omega = cfg.delta_omega;
  ic.cross_section = effective_cross_section(cfg);
  ic.delta_k = cfg.delta_k;
  ic.convention = cfg.convention;
  return ic;
}

namespace {

class Reader {
public:
  explicit Reader(const json& root) : root_(root) {}

  const json* find(const std::string& dotted) const {
    const json* node = &root_;
    std::size_t start = 0;
    while (true) {
      const auto dot = dotted.find('.', start);
      const std::string key = dotted.substr(start, dot - start);
      if (!node->is_object() || !node->contains(key)) return nullptr;
      node = &(*node)[key];
      if (dot == std::string::npos) return node;
      start = dot + 1;
    }
  }

  double number(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) {
      missing_.push_back(key);
      return 0;
    }
    if (!v->is_number()) throw ConfigError("config key " + key + " must be a number");
    return v->get<double>();
  }

  std::optional<double> optional_number(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr || v->is_null()) return std::nullopt;
    if (!v->is_number()) throw ConfigError("config key " + key + " must be a number or null");
    return v->get<double>();
  }

  std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    const json* v = find(key);
    if (v == nullptr) {
      if (fallback) return *fallback;
      missing_.push_back(key);
      return {};
    }
    if (!v->is_string()) throw ConfigError("config key " + key + " must be a string");
    return v->get<std::string>();
  }

  bool flag(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) {
      missing_.push_back(key);
      return false;
    }
    if (!v->is_boolean()) throw ConfigError("config key " + key + " must be true or false");
    return v->get<bool>();
  }

  // Keys whose presence is mandatory even though their value may be null.
  bool present(const std::string& key) {
    if (find(key) != nullptr) return true;
    missing_.push_back(key);
    return false;
  }

  void finish() const {
    if (missing_.empty()) return;
    std::string msg = "config is missing keys:";
    for (const auto& k : missing_) msg += " " + k;
    throw ConfigError(msg);
  }

private:
  const json& root_;
  std::vector<std::string> missing_;
};

Polarization parse_polarization(const std::string& key, const std::string& v) {
  if (v == "y") return Polarization::y;
  if (v == "z") return Polarization::z;
  throw ConfigError("config key " + key + " must be \"y\" or \"z\", got \"" + v + "\"");
}

const char* polarization_name(Polarization p) { return p == Polarization::y ? "y" : "z"; }

void read_beam(Reader& r, const std::string& prefix, Role role, OpticalMode& mode, BeamGeometry& geom,
               double& energy, double& width_nm) {
  mode.role = role;
  mode.wavelength = r.number(prefix + ".wavelength_nm") / 1e9;
  mode.refractive_index = r.number(prefix + ".refractive_index");
  const std::string pol = r.text(prefix + ".polarization");
  if (!pol.empty()) mode.polarization = parse_polarization(prefix + ".polarization", pol);
  width_nm = r.number(prefix + ".spectral_width_nm");
  energy = r.number(prefix + ".energy_uJ") / 1e6;
  geom.waist_radius = r.number(prefix + ".waist_um") / 1e6;
  geom.pulse_duration = r.number(prefix + ".pulse_duration_ps") / 1e12;
  geom.repetition_rate = r.number(prefix + ".repetition_rate_Hz");
}

void read_generated(Reader& r, const std::string& prefix, Role role, OpticalMode& mode) {
  mode.role = role;
  mode.wavelength = r.number(prefix + ".wavelength_nm") / 1e9;
  mode.refractive_index = r.number(prefix + ".refractive_index");
  const std::string pol = r.text(prefix + ".polarization");
  if (!pol.empty()) mode.polarization = parse_polarization(prefix + ".polarization", pol);
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");

  Reader r(root);
  ExperimentConfig c;
  read_beam(r, "pump", Role::pump, c.modes.pump, c.pump_geometry, c.pump_energy,
            c.pump_spectral_width_nm);
  read_beam(r, "stimulation", Role::stimulation, c.modes.stimulation, c.stimulation_geometry,
            c.stimulation_energy, c.stimulation_spectral_width_nm);
  read_generated(r, "signal", Role::signal, c.modes.signal);
  read_generated(r, "idler", Role::idler, c.modes.idler);

  c.crystal.length = r.number("crystal.length_mm") / 1e3;
  c.crystal.chi3_eff = r.number("crystal.chi3_eff_m2_per_V2");
  c.crystal.axis_label = r.text("crystal.axis", std::string("x"));

  c.delta_omega = r.number("model.delta_omega_rad_per_s");
  const std::string policy = r.text("model.cross_section_policy");
  if (policy == "explicit") {
    c.cross_section_policy = CrossSectionPolicy::explicit_value;
    c.cross_section = r.number("model.cross_section_m2");
  } else if (policy == "pump_waist" || policy.empty()) {
    c.cross_section_policy = CrossSectionPolicy::pump_waist;
  } else {
    throw ConfigError("model.cross_section_policy must be \"pump_waist\" or \"explicit\"");
  }
  if (r.present("model.gamma_override")) c.gamma_override = r.optional_number("model.gamma_override");
  c.tau_eff.factor = r.number("model.tau_eff_factor");
  const std::string conv = r.text("model.beta_convention");
  if (conv == "pump_stimulation") {
    c.convention = BetaConvention::pump_stimulation;
  } else if (conv == "signal_idler" || conv.empty()) {
    c.convention = BetaConvention::signal_idler;
  } else {
    throw ConfigError("model.beta_convention must be \"signal_idler\" or \"pump_stimulation\"");
  }
  c.delta_k = r.number("model.delta_k_per_m");

  c.detection.transfer_function = r.number("detection.transfer_function");
  c.detection.idler_transfer_function = r.optional_number("detection.idler_transfer_function");
  c.fit_transfer_function = r.flag("detection.fit_transfer_function");
  c.detection.coincidence_window = r.number("detection.coincidence_window_ps") / 1e12;
  c.detection.dark_coincidence_rate = r.number("detection.dark_coincidence_rate_per_s");
  const std::string stats = r.text("detection.photon_statistics");
  if (stats == "thermal") {
    c.detection.statistics = PhotonStatistics::thermal;
  } else if (stats == "poisson" || stats.empty()) {
    c.detection.statistics = PhotonStatistics::poisson;
  } else {
    throw ConfigError("detection.photon_statistics must be \"poisson\" or \"thermal\"");
  }
  const std::string arms = r.text("detection.arm_correlation", std::string("independent"));
  if (arms == "shared_triplets") {
    c.detection.arms = ArmCorrelation::shared_triplets;
  } else if (arms == "independent") {
    c.detection.arms = ArmCorrelation::independent;
  } else {
    throw ConfigError("detection.arm_correlation must be \"independent\" or \"shared_triplets\"");
  }
  c.output_dir = r.text("output_dir", std::string("out"));
  r.finish();

  c.detection.rep_rate = c.pump_geometry.repetition_rate;
  c.modes.signal.spectral_width = c.delta_omega;
  c.modes.idler.spectral_width = c.delta_omega;
  try {
    c.modes.pump.spectral_width =
        spectral_width_to_rad(c.pump_spectral_width_nm / 1e9, c.modes.pump.wavelength);
    c.modes.stimulation.spectral_width = spectral_width_to_rad(
        c.stimulation_spectral_width_nm / 1e9, c.modes.stimulation.wavelength);
    validate(make_interaction(c, c.pump_energy, c.stimulation_energy));
    validate(c.detection);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config value out of range: ") + e.what());
  }
  if (!(c.tau_eff.factor > 0)) throw ConfigError("model.tau_eff_factor must be > 0");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

// SI value expressed in a display unit, rounded to 15 significant digits so the
// file text survives a parse/serialize cycle unchanged.
double in_units(double si, double scale) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", si * scale);
  return std::strtod(buf, nullptr);
}

}  // namespace

std::string config_to_json(const ExperimentConfig& c) {
  auto beam = [](const OpticalMode& m, const BeamGeometry& g, double energy, double width_nm) {
    return json{{"wavelength_nm", in_units(m.wavelength, 1e9)},
                {"refractive_index", m.refractive_index},
                {"polarization", polarization_name(m.polarization)},
                {"spectral_width_nm", width_nm},
                {"energy_uJ", in_units(energy, 1e6)},
                {"waist_um", in_units(g.waist_radius, 1e6)},
                {"pulse_duration_ps", in_units(g.pulse_duration, 1e12)},
                {"repetition_rate_Hz", g.repetition_rate}};
  };
  auto generated = [](const OpticalMode& m) {
    return json{{"wavelength_nm", in_units(m.wavelength, 1e9)},
                {"refractive_index", m.refractive_index},
                {"polarization", polarization_name(m.polarization)}};
  };
  json root;
  root["pump"] = beam(c.modes.pump, c.pump_geometry, c.pump_energy, c.pump_spectral_width_nm);
  root["stimulation"] = beam(c.modes.stimulation, c.stimulation_geometry, c.stimulation_energy,
                             c.stimulation_spectral_width_nm);
  root["signal"] = generated(c.modes.signal);
  root["idler"] = generated(c.modes.idler);
  root["crystal"] = {{"length_mm", in_units(c.crystal.length, 1e3)},
                     {"chi3_eff_m2_per_V2", c.crystal.chi3_eff},
                     {"axis", c.crystal.axis_label}};
  json model = {
      {"delta_omega_rad_per_s", c.delta_omega},
      {"cross_section_policy",
       c.cross_section_policy == CrossSectionPolicy::pump_waist ? "pump_waist" : "explicit"},
      {"gamma_override", c.gamma_override ? json(*c.gamma_override) : json(nullptr)},
      {"tau_eff_factor", c.tau_eff.factor},
      {"beta_convention",
       c.convention == BetaConvention::signal_idler ? "signal_idler" : "pump_stimulation"},
      {"delta_k_per_m", c.delta_k}};
  if (c.cross_section_policy == CrossSectionPolicy::explicit_value)
    model["cross_section_m2"] = c.cross_section;
  root["model"] = model;
  root["detection"] = {
      {"transfer_function", c.detection.transfer_function},
      {"idler_transfer_function",
       c.detection.idler_transfer_function ? json(*c.detection.idler_transfer_function) : json(nullptr)},
      {"fit_transfer_function", c.fit_transfer_function},
      {"coincidence_window_ps", in_units(c.detection.coincidence_window, 1e12)},
      {"dark_coincidence_rate_per_s", c.detection.dark_coincidence_rate},
      {"photon_statistics",
       c.detection.statistics == PhotonStatistics::poisson ? "poisson" : "thermal"},
      {"arm_correlation",
       c.detection.arms == ArmCorrelation::independent ? "independent" : "shared_triplets"}};
  root["output_dir"] = c.output_dir;
  return root.dump(2) + "\n";
}

}  // namespace tripletgen
