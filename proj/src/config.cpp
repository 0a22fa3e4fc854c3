#include "pairspec/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace pairspec {

namespace {

using nlohmann::json;

void require_keys(const json& object, const std::string& path,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("config: unknown key \"" + path + key + "\"");
    }
  }
}

Real get_number(const json& object, const std::string& path, const std::string& key) {
  const auto& value = object.at(key);
  if (!value.is_number()) throw ConfigError("config: \"" + path + key + "\" must be a number");
  return value.get<Real>();
}

int get_int(const json& object, const std::string& path, const std::string& key, int fallback) {
  if (!object.contains(key)) return fallback;
  const auto& value = object.at(key);
  if (!value.is_number_integer()) {
    throw ConfigError("config: \"" + path + key + "\" must be an integer");
  }
  return value.get<int>();
}

bool get_bool(const json& object, const std::string& path, const std::string& key,
              bool fallback) {
  if (!object.contains(key)) return fallback;
  const auto& value = object.at(key);
  if (!value.is_boolean()) throw ConfigError("config: \"" + path + key + "\" must be a boolean");
  return value.get<bool>();
}

VectorR default_larmor_hz(int n_spins) {
  VectorR f(n_spins);
  for (int i = 0; i < n_spins; ++i) f[i] = 100.0 + 10.0 * static_cast<Real>(i);
  return f;
}

void parse_nmr(const json& doc, ExperimentConfig& config) {
  const int n = config.model.n_spins;
  VectorR larmor_hz = default_larmor_hz(n);
  Real j_scalar = 2.0;
  MatrixR j_matrix;

  if (doc.contains("nmr")) {
    const auto& nmr = doc.at("nmr");
    if (!nmr.is_object()) throw ConfigError("config: \"nmr\" must be an object");
    require_keys(nmr, "nmr.", {"omega0_hz", "j_hz"});
    if (nmr.contains("omega0_hz")) {
      const auto& omega = nmr.at("omega0_hz");
      if (!omega.is_array() || static_cast<int>(omega.size()) != n) {
        throw ConfigError("config: \"nmr.omega0_hz\" must be an array of length N");
      }
      for (int i = 0; i < n; ++i) larmor_hz[i] = omega.at(i).get<Real>();
    }
    if (nmr.contains("j_hz")) {
      const auto& j = nmr.at("j_hz");
      if (j.is_number()) {
        j_scalar = j.get<Real>();
      } else if (j.is_array()) {
        if (static_cast<int>(j.size()) != n) {
          throw ConfigError("config: \"nmr.j_hz\" matrix must be N x N");
        }
        j_matrix.resize(n, n);
        for (int r = 0; r < n; ++r) {
          const auto& row = j.at(r);
          if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw ConfigError("config: \"nmr.j_hz\" matrix must be N x N");
          }
          for (int c = 0; c < n; ++c) j_matrix(r, c) = row.at(c).get<Real>();
        }
        if ((j_matrix - j_matrix.transpose()).cwiseAbs().maxCoeff() != 0.0) {
          throw ConfigError("config: \"nmr.j_hz\" matrix must be symmetric");
        }
        if (j_matrix.diagonal().cwiseAbs().maxCoeff() != 0.0) {
          throw ConfigError("config: \"nmr.j_hz\" matrix must have a zero diagonal");
        }
      } else {
        throw ConfigError("config: \"nmr.j_hz\" must be a number or an N x N array");
      }
    }
  }

  config.larmor = kTwoPi * larmor_hz;
  if (j_matrix.size() == 0) {
    j_matrix = MatrixR::Constant(n, n, j_scalar);
    j_matrix.diagonal().setZero();
  }
  config.j_coupling_hz = std::move(j_matrix);
}

void parse_initial_state(const json& doc, ExperimentConfig& config) {
  if (!doc.contains("initial_state")) return;
  const auto& state = doc.at("initial_state");
  if (state.is_string()) {
    config.initial_state = state.get<std::string>();
    return;
  }
  if (!state.is_array()) {
    throw ConfigError("config: \"initial_state\" must be a name or an amplitude array");
  }
  const auto dim = dimension(config.model.n_spins);
  if (static_cast<Eigen::Index>(state.size()) != dim) {
    throw ConfigError("config: \"initial_state\" amplitude array must have length 2^N");
  }
  VectorC amplitudes(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto& entry = state.at(static_cast<std::size_t>(i));
    if (entry.is_number()) {
      amplitudes[i] = Complex{entry.get<Real>(), 0.0};
    } else if (entry.is_array() && entry.size() == 2) {
      amplitudes[i] = Complex{entry.at(0).get<Real>(), entry.at(1).get<Real>()};
    } else {
      throw ConfigError("config: \"initial_state\" entries must be re or [re, im]");
    }
  }
  const Real norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-6) {
    throw ConfigError("config: \"initial_state\" amplitudes have norm " + std::to_string(norm) +
                      ", expected 1 within 1e-6");
  }
  config.initial_state.clear();
  config.initial_amplitudes = amplitudes / norm;
}

void parse_sweep(const json& doc, ExperimentConfig& config) {
  if (!doc.contains("sweep")) return;
  const auto& sweep = doc.at("sweep");
  if (!sweep.is_object()) throw ConfigError("config: \"sweep\" must be an object");
  require_keys(sweep, "sweep.", {"delta_tau", "n_tau", "tracked_peaks"});

  if (sweep.contains("delta_tau")) {
    const auto& dtau = sweep.at("delta_tau");
    if (dtau.is_string()) {
      if (dtau.get<std::string>() != "auto") {
        throw ConfigError("config: \"sweep.delta_tau\" must be a number or \"auto\"");
      }
    } else if (dtau.is_number()) {
      const Real value = dtau.get<Real>();
      if (value <= 0.0) throw ConfigError("config: \"sweep.delta_tau\" must be positive");
      config.delta_tau = value;
    } else {
      throw ConfigError("config: \"sweep.delta_tau\" must be a number or \"auto\"");
    }
  }
  config.n_tau = get_int(sweep, "sweep.", "n_tau", config.n_tau);
  if (config.n_tau < 4) throw ConfigError("config: \"sweep.n_tau\" must be >= 4");

  if (sweep.contains("tracked_peaks")) {
    const auto& peaks = sweep.at("tracked_peaks");
    if (peaks.is_string()) {
      if (peaks.get<std::string>() != "auto") {
        throw ConfigError("config: \"sweep.tracked_peaks\" must be \"auto\" or a pair list");
      }
    } else if (peaks.is_array()) {
      std::vector<std::pair<int, int>> list;
      const int dim = static_cast<int>(dimension(config.model.n_spins));
      for (const auto& entry : peaks) {
        if (!entry.is_array() || entry.size() != 2) {
          throw ConfigError("config: \"sweep.tracked_peaks\" entries must be [alpha, beta]");
        }
        const int a = entry.at(0).get<int>();
        const int b = entry.at(1).get<int>();
        if (a < 1 || a > dim || b < 1 || b > dim) {
          throw ConfigError("config: \"sweep.tracked_peaks\" labels must lie in [1, 2^N]");
        }
        list.emplace_back(a, b);
      }
      if (list.empty()) throw ConfigError("config: \"sweep.tracked_peaks\" must not be empty");
      config.tracked_peaks = std::move(list);
    } else {
      throw ConfigError("config: \"sweep.tracked_peaks\" must be \"auto\" or a pair list");
    }
  }
}

void parse_readout(const json& doc, ExperimentConfig& config) {
  if (!doc.contains("readout")) return;
  const auto& readout = doc.at("readout");
  if (!readout.is_object()) throw ConfigError("config: \"readout\" must be an object");
  require_keys(readout, "readout.", {"mode", "dt", "n_samples", "window_bins", "dump_csv"});

  if (readout.contains("mode")) {
    const std::string mode = readout.at("mode").get<std::string>();
    if (mode == "oracle") {
      config.readout_mode = ReadoutMode::Oracle;
    } else if (mode == "fid") {
      config.readout_mode = ReadoutMode::Fid;
    } else {
      throw ConfigError("config: \"readout.mode\" must be \"oracle\" or \"fid\"");
    }
  }
  if (readout.contains("dt")) {
    const auto& dt = readout.at("dt");
    if (dt.is_string()) {
      if (dt.get<std::string>() != "auto") {
        throw ConfigError("config: \"readout.dt\" must be a number or \"auto\"");
      }
    } else if (dt.is_number()) {
      const Real value = dt.get<Real>();
      if (value <= 0.0) throw ConfigError("config: \"readout.dt\" must be positive");
      config.fid_dt = value;
    } else {
      throw ConfigError("config: \"readout.dt\" must be a number or \"auto\"");
    }
  }
  config.fid_samples = get_int(readout, "readout.", "n_samples", config.fid_samples);
  if (config.fid_samples < 2) throw ConfigError("config: \"readout.n_samples\" must be >= 2");
  config.fid_window_bins = get_int(readout, "readout.", "window_bins", config.fid_window_bins);
  if (config.fid_window_bins < 0) {
    throw ConfigError("config: \"readout.window_bins\" must be >= 0");
  }
  config.dump_fid_csv = get_bool(readout, "readout.", "dump_csv", config.dump_fid_csv);
}

void parse_evolution(const json& doc, ExperimentConfig& config) {
  if (!doc.contains("evolution")) return;
  const auto& evolution = doc.at("evolution");
  if (!evolution.is_object()) throw ConfigError("config: \"evolution\" must be an object");
  require_keys(evolution, "evolution.", {"mode", "trotter_steps"});
  if (evolution.contains("mode")) {
    const std::string mode = evolution.at("mode").get<std::string>();
    if (mode == "exact") {
      config.evolution = EvolutionMode::Exact;
    } else if (mode == "trotter") {
      config.evolution = EvolutionMode::Trotter;
    } else {
      throw ConfigError("config: \"evolution.mode\" must be \"exact\" or \"trotter\"");
    }
  }
  config.trotter_steps = get_int(evolution, "evolution.", "trotter_steps", config.trotter_steps);
  if (config.trotter_steps < 1) {
    throw ConfigError("config: \"evolution.trotter_steps\" must be >= 1");
  }
}

void parse_analysis(const json& doc, ExperimentConfig& config) {
  if (!doc.contains("analysis")) return;
  const auto& analysis = doc.at("analysis");
  if (!analysis.is_object()) throw ConfigError("config: \"analysis\" must be an object");
  require_keys(analysis, "analysis.",
               {"threshold_fraction", "strict_assignment", "window", "zero_pad", "validation",
                "fermi_level"});
  if (analysis.contains("threshold_fraction")) {
    config.threshold_fraction = get_number(analysis, "analysis.", "threshold_fraction");
    if (config.threshold_fraction <= 0.0 || config.threshold_fraction >= 1.0) {
      throw ConfigError("config: \"analysis.threshold_fraction\" must be in (0, 1)");
    }
  }
  config.strict_assignment =
      get_bool(analysis, "analysis.", "strict_assignment", config.strict_assignment);
  if (analysis.contains("window")) {
    const std::string window = analysis.at("window").get<std::string>();
    if (window == "hann") {
      config.second_ft_window = WindowKind::Hann;
    } else if (window == "rect") {
      config.second_ft_window = WindowKind::Rect;
    } else {
      throw ConfigError("config: \"analysis.window\" must be \"hann\" or \"rect\"");
    }
  }
  config.zero_pad = get_int(analysis, "analysis.", "zero_pad", config.zero_pad);
  if (config.zero_pad < 1) throw ConfigError("config: \"analysis.zero_pad\" must be >= 1");
  config.validation = get_bool(analysis, "analysis.", "validation", config.validation);
  if (analysis.contains("fermi_level")) {
    const auto& fermi = analysis.at("fermi_level");
    if (fermi.is_string()) {
      if (fermi.get<std::string>() != "mean") {
        throw ConfigError("config: \"analysis.fermi_level\" must be a number or \"mean\"");
      }
    } else if (fermi.is_number()) {
      config.fermi_level = fermi.get<Real>();
      config.fermi_level_is_mean = false;
    } else {
      throw ConfigError("config: \"analysis.fermi_level\" must be a number or \"mean\"");
    }
  }
}

}  // namespace

ExperimentConfig parse_config_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: document root must be an object");
  require_keys(doc, "",
               {"N", "epsilon", "V", "nmr", "initial_state", "sweep", "readout", "evolution",
                "analysis", "seed"});
  for (const char* key : {"N", "epsilon", "V"}) {
    if (!doc.contains(key)) {
      throw ConfigError(std::string("config: missing required key \"") + key + "\"");
    }
  }

  ExperimentConfig config;
  const auto& n = doc.at("N");
  if (!n.is_number_integer()) throw ConfigError("config: \"N\" must be an integer");
  config.model.n_spins = n.get<int>();
  if (config.model.n_spins < 1 || config.model.n_spins > 12) {
    throw ConfigError("config: \"N\" must lie in [1, 12] (dense 2^N matrices)");
  }

  const auto& epsilon = doc.at("epsilon");
  if (!epsilon.is_array() || static_cast<int>(epsilon.size()) != config.model.n_spins) {
    throw ConfigError("config: \"epsilon\" must be an array of length N = " +
                      std::to_string(config.model.n_spins));
  }
  config.model.epsilon.resize(config.model.n_spins);
  for (int i = 0; i < config.model.n_spins; ++i) {
    config.model.epsilon[i] = epsilon.at(i).get<Real>();
  }
  config.model.coupling = get_number(doc, "", "V");

  parse_nmr(doc, config);
  parse_initial_state(doc, config);
  parse_sweep(doc, config);
  parse_readout(doc, config);
  parse_evolution(doc, config);
  parse_analysis(doc, config);

  if (doc.contains("seed")) {
    const auto& seed = doc.at("seed");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
      throw ConfigError("config: \"seed\" must be an integer");
    }
    config.seed = seed.get<std::uint64_t>();
  }

  if (config.fermi_level_is_mean) config.fermi_level = config.model.epsilon.mean();

  // Blind mode cannot defer the Nyquist check to the diagonalization stage;
  // reject an explicit delta_tau against the parameter bound right here.
  if (!config.validation && config.delta_tau) {
    const Real bound = spectral_range_bound(config.model);
    if (*config.delta_tau > kPi / bound) {
      throw NyquistError("config: sweep.delta_tau " + std::to_string(*config.delta_tau) +
                         " exceeds the Nyquist limit pi / " + std::to_string(bound) + " = " +
                         std::to_string(kPi / bound) +
                         " from the bound sum|eps| + N(N-1)V");
    }
  }
  return config;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) throw ConfigError("config: cannot open \"" + path + "\"");
  json doc;
  try {
    doc = json::parse(stream);
  } catch (const json::parse_error& err) {
    throw ConfigError("config: JSON parse error in \"" + path + "\": " + err.what());
  }
  return parse_config_json(doc);
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& config) {
  nlohmann::ordered_json doc;
  doc["N"] = config.model.n_spins;
  doc["epsilon"] = std::vector<Real>(config.model.epsilon.data(),
                                     config.model.epsilon.data() + config.model.epsilon.size());
  doc["V"] = config.model.coupling;

  nlohmann::ordered_json nmr;
  std::vector<Real> omega_hz;
  for (Eigen::Index i = 0; i < config.larmor.size(); ++i) {
    omega_hz.push_back(config.larmor[i] / kTwoPi);
  }
  nmr["omega0_hz"] = omega_hz;
  std::vector<std::vector<Real>> j_rows;
  for (Eigen::Index r = 0; r < config.j_coupling_hz.rows(); ++r) {
    std::vector<Real> row;
    for (Eigen::Index c = 0; c < config.j_coupling_hz.cols(); ++c) {
      row.push_back(config.j_coupling_hz(r, c));
    }
    j_rows.push_back(std::move(row));
  }
  nmr["j_hz"] = j_rows;
  doc["nmr"] = std::move(nmr);

  if (config.initial_amplitudes) {
    nlohmann::ordered_json amps = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < config.initial_amplitudes->size(); ++i) {
      const Complex a = (*config.initial_amplitudes)[i];
      amps.push_back({a.real(), a.imag()});
    }
    doc["initial_state"] = std::move(amps);
  } else {
    doc["initial_state"] = config.initial_state;
  }

  nlohmann::ordered_json sweep;
  if (config.delta_tau) {
    sweep["delta_tau"] = *config.delta_tau;
  } else {
    sweep["delta_tau"] = "auto";
  }
  sweep["n_tau"] = config.n_tau;
  if (config.tracked_peaks) {
    nlohmann::ordered_json peaks = nlohmann::ordered_json::array();
    for (const auto& [a, b] : *config.tracked_peaks) peaks.push_back({a, b});
    sweep["tracked_peaks"] = std::move(peaks);
  } else {
    sweep["tracked_peaks"] = "auto";
  }
  doc["sweep"] = std::move(sweep);

  nlohmann::ordered_json readout;
  readout["mode"] = config.readout_mode == ReadoutMode::Oracle ? "oracle" : "fid";
  if (config.fid_dt) {
    readout["dt"] = *config.fid_dt;
  } else {
    readout["dt"] = "auto";
  }
  readout["n_samples"] = config.fid_samples;
  readout["window_bins"] = config.fid_window_bins;
  readout["dump_csv"] = config.dump_fid_csv;
  doc["readout"] = std::move(readout);

  nlohmann::ordered_json evolution;
  evolution["mode"] = config.evolution == EvolutionMode::Exact ? "exact" : "trotter";
  evolution["trotter_steps"] = config.trotter_steps;
  doc["evolution"] = std::move(evolution);

  nlohmann::ordered_json analysis;
  analysis["threshold_fraction"] = config.threshold_fraction;
  analysis["strict_assignment"] = config.strict_assignment;
  analysis["window"] = config.second_ft_window == WindowKind::Hann ? "hann" : "rect";
  analysis["zero_pad"] = config.zero_pad;
  analysis["validation"] = config.validation;
  analysis["fermi_level"] = config.fermi_level;
  doc["analysis"] = std::move(analysis);

  doc["seed"] = config.seed;
  return doc;
}

}  // namespace pairspec
