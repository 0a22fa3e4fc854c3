#include "pairspec/experiment.hpp"

#include "pairspec/basis.hpp"
#include "pairspec/bcs.hpp"
#include "pairspec/dynamics.hpp"
#include "pairspec/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

namespace pairspec {

namespace {

std::string format_real(Real value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::vector<Real> to_std(const VectorR& v) {
  return {v.data(), v.data() + v.size()};
}

}  // namespace

std::vector<NmrPeakId> auto_tracked_peaks(int n_spins, const VectorR& nmr_diagonal,
                                          const VectorC& psi0) {
  const int dim = static_cast<int>(dimension(n_spins));

  // Weight of psi0 in each excitation-number subspace.
  VectorR weight = VectorR::Zero(n_spins + 1);
  for (int label = 1; label <= dim; ++label) {
    weight[count_up({label, n_spins})] += std::norm(psi0[label - 1]);
  }
  const auto supported = [&](int label) { return weight[count_up({label, n_spins})] > 1e-12; };

  std::vector<NmrPeakId> peaks;
  std::set<std::pair<int, int>> seen;
  const auto add = [&](int upper, int lower) {
    if (!supported(upper) || !supported(lower)) return;
    if (!seen.insert({upper, lower}).second) return;
    peaks.push_back(make_peak(upper, lower, n_spins, nmr_diagonal));
  };
  for (int k = 1; k <= n_spins; ++k) {
    add(dim - (1 << (n_spins - k)), dim);  // S_1 <-> S_0
    add(1, (1 << (n_spins - k)) + 1);      // S_N <-> S_{N-1}
  }
  return peaks;
}

ExperimentSetup prepare_experiment(const ExperimentConfig& config) {
  ExperimentSetup setup;
  setup.config = config;
  setup.nmr = NmrModel{config.larmor, config.j_coupling_hz};
  setup.nmr_diagonal = build_nmr_hamiltonian(setup.nmr);

  setup.psi0 = config.initial_amplitudes
                   ? *config.initial_amplitudes
                   : named_initial_state(config.initial_state, config.model.n_spins);

  if (config.validation) {
    setup.eigensystem =
        exact_spectrum(build_pairing_hamiltonian(config.model), config.model.n_spins);
    const auto& values = setup.eigensystem->values;
    setup.range_bound = values[values.size() - 1] - values[0];
  } else {
    setup.range_bound = spectral_range_bound(config.model);
  }

  const Real nyquist_step = kPi / setup.range_bound;
  if (config.delta_tau) {
    if (*config.delta_tau > nyquist_step) {
      throw NyquistError("sweep.delta_tau " + format_real(*config.delta_tau) +
                         " exceeds the Nyquist limit pi / " + format_real(setup.range_bound) +
                         " = " + format_real(nyquist_step) +
                         (config.validation ? " (exact spectral range)"
                                            : " (bound sum|eps| + N(N-1)V)"));
    }
    setup.delta_tau = *config.delta_tau;
  } else {
    setup.delta_tau = 0.5 * nyquist_step;
  }

  if (config.tracked_peaks) {
    for (const auto& [a, b] : *config.tracked_peaks) {
      setup.peaks.push_back(make_peak(a, b, config.model.n_spins, setup.nmr_diagonal));
    }
  } else {
    setup.peaks = auto_tracked_peaks(config.model.n_spins, setup.nmr_diagonal, setup.psi0);
    if (setup.peaks.empty()) {
      throw ConfigError("auto tracked peaks: the initial state supports none of the 2N "
                        "candidate transitions; specify sweep.tracked_peaks explicitly");
    }
  }
  for (const auto& peak : setup.peaks) {
    setup.peak_multiplicities.push_back(
        peak_multiplicity(peak, config.model.n_spins, setup.nmr_diagonal));
  }
  return setup;
}

SweepRecord run_sweep(const ExperimentSetup& setup) {
  const auto& config = setup.config;
  SweepOptions options;
  options.evolution = config.evolution;
  options.trotter_steps = config.trotter_steps;
  options.readout = config.readout_mode;
  options.fid_dt = config.fid_dt ? *config.fid_dt : 1.0 / static_cast<Real>(config.fid_samples);
  options.fid_samples = config.fid_samples;
  options.fid_window_bins = config.fid_window_bins;

  const TauGrid grid{setup.delta_tau, config.n_tau};
  return run_tau_sweep(config.model, setup.nmr, setup.psi0, grid, setup.peaks, options);
}

AnalysisResult analyze_sweep(const ExperimentSetup& setup, const SweepRecord& record) {
  const auto& config = setup.config;
  AnalysisResult result;
  result.natural_bin = kTwoPi / (static_cast<Real>(record.grid.n_tau) * record.grid.delta_tau);

  SecondFtOptions options;
  options.window = config.second_ft_window;
  options.zero_pad = config.zero_pad;

  std::vector<Real> all;
  for (std::size_t p = 0; p < record.tracked_peaks.size(); ++p) {
    result.spectra.push_back(second_ft(record, static_cast<int>(p), options));
    result.per_peak.push_back(
        extract_differences(result.spectra.back(), config.threshold_fraction));
    all.insert(all.end(), result.per_peak.back().begin(), result.per_peak.back().end());
  }

  // Merge across peaks: cluster anything within a quarter bin, keep means.
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i + 1;
    Real sum = all[i];
    while (j < all.size() && all[j] - all[j - 1] < 0.25 * result.natural_bin) {
      sum += all[j];
      ++j;
    }
    result.merged.push_back(sum / static_cast<Real>(j - i));
    i = j;
  }

  result.levels = assign_and_anchor(result.merged, config.model, setup.eigensystem,
                                    result.natural_bin);
  if (config.strict_assignment) {
    for (const auto& assignment : result.levels.assignments) {
      if (assignment.ambiguous) {
        throw AmbiguousAssignmentError(
            "recovered difference " + format_real(assignment.recovered) +
            " matches two exact differences within one bin (" + format_real(result.natural_bin) +
            ")");
      }
    }
  }
  return result;
}

// ---- artifacts ----

nlohmann::ordered_json sweep_to_json(const ExperimentSetup& setup, const SweepRecord& record) {
  nlohmann::ordered_json doc;
  doc["config"] = config_to_json(setup.config);
  doc["grid"] = {{"tau0", 0.0}, {"delta_tau", record.grid.delta_tau}, {"n_tau", record.grid.n_tau}};
  nlohmann::ordered_json peaks = nlohmann::ordered_json::array();
  for (std::size_t p = 0; p < record.tracked_peaks.size(); ++p) {
    const auto& peak = record.tracked_peaks[p];
    peaks.push_back({{"alpha", peak.alpha},
                     {"beta", peak.beta},
                     {"frequency", peak.frequency},
                     {"multiplicity", setup.peak_multiplicities[p]}});
  }
  doc["tracked_peaks"] = std::move(peaks);
  nlohmann::ordered_json amplitudes = nlohmann::ordered_json::array();
  for (Eigen::Index p = 0; p < record.amplitudes.rows(); ++p) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index k = 0; k < record.amplitudes.cols(); ++k) {
      const Complex a = record.amplitudes(p, k);
      row.push_back({a.real(), a.imag()});
    }
    amplitudes.push_back(std::move(row));
  }
  doc["amplitudes"] = std::move(amplitudes);
  return doc;
}

SweepRecord sweep_from_json(const nlohmann::json& doc, ExperimentConfig& config_out) {
  config_out = parse_config_json(doc.at("config"));
  SweepRecord record;
  record.grid.delta_tau = doc.at("grid").at("delta_tau").get<Real>();
  record.grid.n_tau = doc.at("grid").at("n_tau").get<int>();
  for (const auto& peak : doc.at("tracked_peaks")) {
    record.tracked_peaks.push_back(NmrPeakId{peak.at("alpha").get<int>(),
                                             peak.at("beta").get<int>(),
                                             peak.at("frequency").get<Real>()});
  }
  const auto& amplitudes = doc.at("amplitudes");
  record.amplitudes.resize(static_cast<Eigen::Index>(record.tracked_peaks.size()),
                           record.grid.n_tau);
  for (Eigen::Index p = 0; p < record.amplitudes.rows(); ++p) {
    const auto& row = amplitudes.at(static_cast<std::size_t>(p));
    if (static_cast<int>(row.size()) != record.grid.n_tau) {
      throw ConfigError("sweep file: amplitude row length does not match n_tau");
    }
    for (Eigen::Index k = 0; k < record.grid.n_tau; ++k) {
      const auto& entry = row.at(static_cast<std::size_t>(k));
      record.amplitudes(p, k) = Complex{entry.at(0).get<Real>(), entry.at(1).get<Real>()};
    }
  }
  return record;
}

nlohmann::ordered_json build_report(const ExperimentSetup& setup, const SweepRecord& record,
                                    const AnalysisResult& analysis) {
  nlohmann::ordered_json doc;
  doc["config"] = config_to_json(setup.config);
  doc["nyquist"] = {{"mode", setup.config.validation ? "validation" : "blind"},
                    {"range_bound", setup.range_bound},
                    {"delta_tau", setup.delta_tau}};

  nlohmann::ordered_json peaks = nlohmann::ordered_json::array();
  for (std::size_t p = 0; p < record.tracked_peaks.size(); ++p) {
    const auto& peak = record.tracked_peaks[p];
    peaks.push_back({{"alpha", peak.alpha},
                     {"beta", peak.beta},
                     {"frequency", peak.frequency},
                     {"multiplicity", setup.peak_multiplicities[p]}});
  }
  doc["tracked_peaks"] = std::move(peaks);

  if (setup.eigensystem) {
    doc["exact_levels"] = {{"values", to_std(setup.eigensystem->values)},
                           {"subspace_tags", setup.eigensystem->subspace_tags}};
  }

  doc["second_ft"] = {
      {"window", setup.config.second_ft_window == WindowKind::Hann ? "hann" : "rect"},
      {"zero_pad", setup.config.zero_pad},
      {"natural_bin", analysis.natural_bin},
      {"grid_bin", analysis.spectra.empty() ? analysis.natural_bin
                                            : analysis.spectra.front().resolution}};

  nlohmann::ordered_json recovered;
  recovered["per_peak"] = analysis.per_peak;
  recovered["merged"] = analysis.merged;
  doc["recovered"] = std::move(recovered);

  doc["levels"] = {{"reference", analysis.levels.reference},
                   {"differences", analysis.levels.differences},
                   {"absolute", analysis.levels.absolute_levels}};

  nlohmann::ordered_json assignments = nlohmann::ordered_json::array();
  for (const auto& a : analysis.levels.assignments) {
    assignments.push_back({{"recovered", a.recovered},
                           {"exact", a.exact},
                           {"residual", a.residual},
                           {"level_i", a.level_i},
                           {"level_j", a.level_j},
                           {"tag_i", a.tag_i},
                           {"tag_j", a.tag_j},
                           {"ambiguous", a.ambiguous}});
  }
  doc["assignments"] = std::move(assignments);
  return doc;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot open \"" + path + "\" for writing");
  stream << content;
  if (!stream) throw std::runtime_error("failed writing \"" + path + "\"");
}

std::string spectrum_csv(const PairingSpectrum& spectrum) {
  // Rows ascending in omega; columns omega, magnitude, re, im.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(spectrum.frequencies.size()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return spectrum.frequencies[a] < spectrum.frequencies[b];
  });
  std::string csv = "omega,magnitude,re,im\n";
  for (const Eigen::Index bin : order) {
    csv += format_real(spectrum.frequencies[bin]) + "," + format_real(spectrum.magnitudes[bin]) +
           "," + format_real(spectrum.amplitudes[bin].real()) + "," +
           format_real(spectrum.amplitudes[bin].imag()) + "\n";
  }
  return csv;
}

namespace {

std::string fid_csv(const FidSignal& fid) {
  std::string csv = "t,re,im\n";
  for (Eigen::Index k = 0; k < fid.samples.size(); ++k) {
    csv += format_real(fid.dt * static_cast<Real>(k)) + "," +
           format_real(fid.samples[k].real()) + "," + format_real(fid.samples[k].imag()) + "\n";
  }
  return csv;
}

std::string nmr_spectrum_csv(const NmrSpectrum& spectrum) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(spectrum.frequencies.size()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return spectrum.frequencies[a] < spectrum.frequencies[b];
  });
  std::string csv = "omega,re,im\n";
  for (const Eigen::Index bin : order) {
    csv += format_real(spectrum.frequencies[bin]) + "," +
           format_real(spectrum.amplitudes[bin].real()) + "," +
           format_real(spectrum.amplitudes[bin].imag()) + "\n";
  }
  return csv;
}

void dump_fid_artifacts(const ExperimentSetup& setup, const std::string& out_dir) {
  const auto& config = setup.config;
  const Real dt = config.fid_dt ? *config.fid_dt : 1.0 / static_cast<Real>(config.fid_samples);
  const Eigensystem eig =
      setup.eigensystem ? *setup.eigensystem
                        : exact_spectrum(build_pairing_hamiltonian(config.model),
                                         config.model.n_spins);
  const TauGrid grid{setup.delta_tau, config.n_tau};
  for (int k = 0; k < grid.n_tau; ++k) {
    const Propagator u = exact_propagator(eig, grid.tau(k));
    const MatrixC rho = evolve_to_density(setup.psi0, u);
    const FidSignal fid =
        fid_signal(rho, setup.nmr_diagonal, config.model.n_spins, dt, config.fid_samples);
    write_text_file(out_dir + "/fid_tau" + std::to_string(k) + ".csv", fid_csv(fid));
    write_text_file(out_dir + "/nmr_spectrum_tau" + std::to_string(k) + ".csv",
                    nmr_spectrum_csv(first_ft(fid)));
  }
}

}  // namespace

nlohmann::ordered_json run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const ExperimentSetup setup = prepare_experiment(config);
  for (std::size_t p = 0; p < setup.peaks.size(); ++p) {
    if (setup.peak_multiplicities[p] > 1) {
      std::cerr << "warning: tracked peak (" << setup.peaks[p].alpha << ", "
                << setup.peaks[p].beta << ") is degenerate: " << setup.peak_multiplicities[p]
                << " transitions share its frequency\n";
    }
  }

  const SweepRecord record = run_sweep(setup);
  const AnalysisResult analysis = analyze_sweep(setup, record);

  write_text_file(out_dir + "/sweep.json", sweep_to_json(setup, record).dump(2) + "\n");
  const auto report = build_report(setup, record, analysis);
  write_text_file(out_dir + "/report.json", report.dump(2) + "\n");
  for (std::size_t p = 0; p < analysis.spectra.size(); ++p) {
    const std::string name =
        p == 0 ? "pairing_spectrum.csv" : "pairing_spectrum_" + std::to_string(p) + ".csv";
    write_text_file(out_dir + "/" + name, spectrum_csv(analysis.spectra[p]));
  }
  if (config.readout_mode == ReadoutMode::Fid && config.dump_fid_csv) {
    dump_fid_artifacts(setup, out_dir);
  }
  return report;
}

}  // namespace pairspec
