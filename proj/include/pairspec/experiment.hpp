// Orchestration of the four protocol steps plus artifact emission. This is
// the layer behind the CLI subcommands; everything here is deterministic
// given the config (and seed, for the validation suite).
#pragma once

#include "pairspec/config.hpp"
#include "pairspec/spectroscopy.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pairspec {

/// Everything resolved before the sweep runs: sample Hamiltonian diagonal,
/// initial state, optional eigensystem, the Nyquist bound actually applied,
/// the resolved tau step and the tracked peaks.
struct ExperimentSetup {
  ExperimentConfig config;
  NmrModel nmr;
  VectorR nmr_diagonal;
  VectorC psi0;
  std::optional<Eigensystem> eigensystem;  // present in validation mode
  Real range_bound = 0.0;                  // max |E_p^i - E_p^j| (exact or parameter bound)
  Real delta_tau = 0.0;
  std::vector<NmrPeakId> peaks;
  std::vector<int> peak_multiplicities;
};

struct AnalysisResult {
  std::vector<PairingSpectrum> spectra;          // one per tracked peak
  std::vector<std::vector<Real>> per_peak;       // recovered differences per peak
  std::vector<Real> merged;                      // deduplicated union
  LevelReport levels;
  Real natural_bin = 0.0;  // 2 pi / (n_tau * delta_tau), before zero padding
};

/// Resolve models, state, eigensystem, delta_tau (Nyquist-guarded) and the
/// tracked-peak list. Throws NyquistError when an explicit delta_tau exceeds
/// pi / range_bound.
ExperimentSetup prepare_experiment(const ExperimentConfig& config);

/// Steps 1-3 with the setup's resolved parameters.
SweepRecord run_sweep(const ExperimentSetup& setup);

/// Step 4 plus peak extraction, merging and level assignment. Throws
/// AmbiguousAssignmentError in strict mode when any assignment is flagged.
AnalysisResult analyze_sweep(const ExperimentSetup& setup, const SweepRecord& record);

/// The 2N candidate peaks connecting S_1 <-> S_0 and S_{N-1} <-> S_N,
/// filtered to those whose two end subspaces both carry weight of psi0.
std::vector<NmrPeakId> auto_tracked_peaks(int n_spins, const VectorR& nmr_diagonal,
                                          const VectorC& psi0);

// ---- artifacts ----

nlohmann::ordered_json sweep_to_json(const ExperimentSetup& setup, const SweepRecord& record);
SweepRecord sweep_from_json(const nlohmann::json& doc, ExperimentConfig& config_out);

nlohmann::ordered_json build_report(const ExperimentSetup& setup, const SweepRecord& record,
                                    const AnalysisResult& analysis);

/// End-to-end: prepare, sweep, analyze, and write report.json,
/// pairing_spectrum*.csv and sweep.json under out_dir.
nlohmann::ordered_json run_experiment(const ExperimentConfig& config, const std::string& out_dir);

void write_text_file(const std::string& path, const std::string& content);
std::string spectrum_csv(const PairingSpectrum& spectrum);

/// Invariant suite behind the `validate` subcommand; prints one pass/fail
/// line per check and returns the number of failures.
int run_validation_suite(std::uint64_t seed, std::ostream& out);

}  // namespace pairspec
