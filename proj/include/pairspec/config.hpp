// Experiment configuration: JSON schema with defaults, strict unknown-key
// rejection, and validation messages carrying field paths.
#pragma once

#include "pairspec/model.hpp"
#include "pairspec/spectroscopy.hpp"
#include "pairspec/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pairspec {

struct ExperimentConfig {
  PairingModel model;

  // NMR sample parameters. Larmor frequencies and J couplings are given in
  // Hz in the config; larmor below is already angular (2 pi f).
  VectorR larmor;
  MatrixR j_coupling_hz;

  // Initial state: a named constructor or explicit amplitudes.
  std::string initial_state = "proposal";
  std::optional<VectorC> initial_amplitudes;

  // tau sweep. delta_tau empty means "auto": half the Nyquist-limited step
  // for the applicable spectral-range bound.
  std::optional<Real> delta_tau;
  int n_tau = 256;
  std::optional<std::vector<std::pair<int, int>>> tracked_peaks;  // empty = auto

  // Readout chain.
  ReadoutMode readout_mode = ReadoutMode::Oracle;
  std::optional<Real> fid_dt;  // empty = auto: 1/n_samples (1 s record)
  int fid_samples = 512;
  int fid_window_bins = 0;
  bool dump_fid_csv = false;

  // Evolution.
  EvolutionMode evolution = EvolutionMode::Exact;
  int trotter_steps = 32;

  // Analysis.
  Real threshold_fraction = 0.04;
  bool strict_assignment = false;
  WindowKind second_ft_window = WindowKind::Hann;
  int zero_pad = 4;
  bool validation = true;  // diagonalize and assign; false = blind mode
  Real fermi_level = 0.0;
  bool fermi_level_is_mean = true;

  std::uint64_t seed = 1;
};

/// Parse and validate a config file. Unknown keys are rejected; messages
/// name the offending field. In blind mode an explicit delta_tau is checked
/// against the parameter-based Nyquist bound here (NyquistError); in
/// validation mode the exact check happens at run time.
ExperimentConfig parse_config(const std::string& path);

/// Same, from an already-parsed JSON document.
ExperimentConfig parse_config_json(const nlohmann::json& doc);

/// Serialize the resolved config back to its schema (deterministic order).
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

}  // namespace pairspec
