// pairspec command-line tool: spectrum | sweep | secondft | run | gap | validate.
#include "pairspec/experiment.hpp"

#include "pairspec/bcs.hpp"
#include "pairspec/model.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using pairspec::Real;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::string evolution;
  std::string readout;
  int trotter_steps = 0;
  bool strict = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
  auto* config = cmd->add_option("--config", args.config_path, "experiment config (JSON)");
  if (config_required) config->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--evolution", args.evolution, "override evolution mode: exact|trotter")
      ->check(CLI::IsMember({"exact", "trotter"}));
  cmd->add_option("--trotter-steps", args.trotter_steps,
                  "product-formula steps per tau increment (trotter mode)");
  cmd->add_option("--readout", args.readout, "override readout mode: oracle|fid")
      ->check(CLI::IsMember({"oracle", "fid"}));
  cmd->add_flag("--strict", args.strict, "fail on ambiguous level assignments");
}

pairspec::ExperimentConfig load_config(const CommonArgs& args) {
  auto config = pairspec::parse_config(args.config_path);
  if (args.evolution == "exact") config.evolution = pairspec::EvolutionMode::Exact;
  if (args.evolution == "trotter") config.evolution = pairspec::EvolutionMode::Trotter;
  if (args.readout == "oracle") config.readout_mode = pairspec::ReadoutMode::Oracle;
  if (args.readout == "fid") config.readout_mode = pairspec::ReadoutMode::Fid;
  if (args.trotter_steps > 0) config.trotter_steps = args.trotter_steps;
  if (args.strict) config.strict_assignment = true;
  return config;
}

int cmd_spectrum(const CommonArgs& args) {
  const auto config = load_config(args);
  const auto eig = pairspec::exact_spectrum(pairspec::build_pairing_hamiltonian(config.model),
                                            config.model.n_spins);
  nlohmann::ordered_json doc;
  doc["config"] = pairspec::config_to_json(config);
  doc["levels"] = std::vector<Real>(eig.values.data(), eig.values.data() + eig.values.size());
  doc["subspace_tags"] = eig.subspace_tags;
  doc["reference"] = -0.5 * config.model.epsilon.sum();
  std::filesystem::create_directories(args.out_dir);
  pairspec::write_text_file(args.out_dir + "/spectrum.json", doc.dump(2) + "\n");
  std::cout << "wrote " << args.out_dir << "/spectrum.json (" << eig.values.size()
            << " levels)\n";
  return 0;
}

int cmd_sweep(const CommonArgs& args) {
  const auto config = load_config(args);
  const auto setup = pairspec::prepare_experiment(config);
  const auto record = pairspec::run_sweep(setup);
  std::filesystem::create_directories(args.out_dir);
  pairspec::write_text_file(args.out_dir + "/sweep.json",
                            pairspec::sweep_to_json(setup, record).dump(2) + "\n");
  std::cout << "wrote " << args.out_dir << "/sweep.json (" << record.tracked_peaks.size()
            << " peaks x " << record.grid.n_tau << " tau points)\n";
  return 0;
}

int cmd_secondft(const CommonArgs& args, const std::string& sweep_path) {
  const std::string path = sweep_path.empty() ? args.out_dir + "/sweep.json" : sweep_path;
  std::ifstream stream(path);
  if (!stream) throw pairspec::ConfigError("cannot open sweep file \"" + path + "\"");
  const auto doc = nlohmann::json::parse(stream);

  pairspec::ExperimentConfig config;
  const auto record = pairspec::sweep_from_json(doc, config);
  if (args.strict) config.strict_assignment = true;
  config.delta_tau = record.grid.delta_tau;
  config.n_tau = record.grid.n_tau;

  auto setup = pairspec::prepare_experiment(config);
  // The saved record is authoritative for what was tracked.
  setup.peaks = record.tracked_peaks;
  setup.peak_multiplicities.clear();
  for (const auto& peak : setup.peaks) {
    setup.peak_multiplicities.push_back(
        pairspec::peak_multiplicity(peak, config.model.n_spins, setup.nmr_diagonal));
  }
  const auto analysis = pairspec::analyze_sweep(setup, record);
  std::filesystem::create_directories(args.out_dir);
  pairspec::write_text_file(args.out_dir + "/report.json",
                            pairspec::build_report(setup, record, analysis).dump(2) + "\n");
  for (std::size_t p = 0; p < analysis.spectra.size(); ++p) {
    const std::string name =
        p == 0 ? "pairing_spectrum.csv" : "pairing_spectrum_" + std::to_string(p) + ".csv";
    pairspec::write_text_file(args.out_dir + "/" + name,
                              pairspec::spectrum_csv(analysis.spectra[p]));
  }
  std::cout << "wrote " << args.out_dir << "/report.json (" << analysis.merged.size()
            << " recovered differences)\n";
  return 0;
}

int cmd_run(const CommonArgs& args) {
  const auto config = load_config(args);
  const auto report = pairspec::run_experiment(config, args.out_dir);
  std::cout << "wrote " << args.out_dir << "/report.json ("
            << report.at("recovered").at("merged").size() << " recovered differences)\n";
  return 0;
}

int cmd_gap(const CommonArgs& args) {
  const auto config = load_config(args);
  nlohmann::ordered_json doc;
  doc["config"] = pairspec::config_to_json(config);
  doc["fermi_level"] = config.fermi_level;
  const pairspec::VectorR xi = config.model.epsilon.array() - config.fermi_level;
  doc["xi"] = std::vector<Real>(xi.data(), xi.data() + xi.size());
  try {
    const auto report = pairspec::gap_relation_check(config.model.epsilon, config.model.coupling,
                                                     config.fermi_level);
    doc["solvable"] = true;
    doc["delta"] = report.delta;
    doc["lhs_quasiparticle_difference"] = report.lhs;
    doc["rhs_subspace1_gap"] = report.rhs;
    doc["abs_dev"] = report.abs_dev;
    doc["rel_dev"] = report.rel_dev;
  } catch (const pairspec::NoSolutionError& err) {
    doc["solvable"] = false;
    doc["reason"] = err.what();
  }
  std::filesystem::create_directories(args.out_dir);
  pairspec::write_text_file(args.out_dir + "/gap.json", doc.dump(2) + "\n");
  std::cout << "wrote " << args.out_dir << "/gap.json\n";
  return 0;
}

int cmd_validate(const CommonArgs& args) {
  std::uint64_t seed = 1;
  if (!args.config_path.empty()) seed = pairspec::parse_config(args.config_path).seed;
  return pairspec::run_validation_suite(seed, std::cout) == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NMR two-transform spectroscopy simulator for the pairing model"};
  app.require_subcommand(1);

  CommonArgs spectrum_args, sweep_args, secondft_args, run_args, gap_args, validate_args;
  std::string sweep_path;

  add_common(app.add_subcommand("spectrum", "diagonalize H_p and emit exact levels"),
             spectrum_args);
  add_common(app.add_subcommand("sweep", "run the tau sweep (protocol steps 1-3)"), sweep_args);
  auto* secondft =
      app.add_subcommand("secondft", "second Fourier transform of a saved sweep (step 4)");
  add_common(secondft, secondft_args, /*config_required=*/false);
  secondft->add_option("--sweep", sweep_path, "sweep.json from the sweep subcommand");
  add_common(app.add_subcommand("run", "full experiment, steps 1-4"), run_args);
  add_common(app.add_subcommand("gap", "BCS gap equation and the spectrum-gap relation"),
             gap_args);
  auto* validate = app.add_subcommand("validate", "run the invariant suite");
  add_common(validate, validate_args, /*config_required=*/false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("spectrum")) return cmd_spectrum(spectrum_args);
    if (app.got_subcommand("sweep")) return cmd_sweep(sweep_args);
    if (app.got_subcommand("secondft")) return cmd_secondft(secondft_args, sweep_path);
    if (app.got_subcommand("run")) return cmd_run(run_args);
    if (app.got_subcommand("gap")) return cmd_gap(gap_args);
    if (app.got_subcommand("validate")) return cmd_validate(validate_args);
  } catch (const pairspec::NyquistError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const pairspec::AliasingError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const pairspec::AmbiguousAssignmentError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
