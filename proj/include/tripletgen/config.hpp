#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "tripletgen/coincidence.hpp"
#include "tripletgen/optics.hpp"
#include "tripletgen/triplet_model.hpp"

namespace tripletgen {

enum class CrossSectionPolicy { pump_waist, explicit_value };

/// Everything the pipeline needs, in SI units. Files use unit-suffixed keys
/// (energy_uJ, waist_um, ...) and are converted on load.
struct ExperimentConfig {
  ModeSet modes;
  BeamGeometry pump_geometry;
  BeamGeometry stimulation_geometry;
  CrystalConfig crystal;
  double pump_energy = 0;          // J, used by `model` when not given on the command line
  double stimulation_energy = 0;   // J
  double pump_spectral_width_nm = 0;
  double stimulation_spectral_width_nm = 0;
  double delta_omega = 0;          // rad/s
  CrossSectionPolicy cross_section_policy = CrossSectionPolicy::pump_waist;
  double cross_section = 0;        // m^2, only read for explicit_value
  std::optional<double> gamma_override;
  TauEffPolicy tau_eff;
  BetaConvention convention = BetaConvention::signal_idler;
  double delta_k = 0;              // 1/m
  DetectionSetup detection;
  bool fit_transfer_function = false;
  std::string output_dir = "out";
};

/// Experimental parameters of the KTP triplet experiment (532 nm pump,
/// 1491 nm stimulation, 1654 nm signal/idler) with gamma fixed at 0.537.
ExperimentConfig paper_default_config();

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& cfg);

/// Overlap cross-section selected by the policy.
double effective_cross_section(const ExperimentConfig& cfg);

/// Interaction at the given pulse energies (J).
InteractionConfig make_interaction(const ExperimentConfig& cfg, double pump_energy,
                                   double stimulation_energy);

}  // namespace tripletgen
