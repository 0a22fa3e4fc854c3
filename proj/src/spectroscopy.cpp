#include "pairspec/spectroscopy.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace pairspec {

namespace {

void check_grid(const TauGrid& grid) {
  if (grid.delta_tau <= 0.0) throw std::invalid_argument("tau grid: delta_tau must be positive");
  if (grid.n_tau < 4) throw std::invalid_argument("tau grid: need at least 4 points");
}

}  // namespace

SweepRecord run_tau_sweep(const PairingModel& model, const NmrModel& nmr, const VectorC& psi0,
                          const TauGrid& grid, const std::vector<NmrPeakId>& tracked_peaks,
                          const SweepOptions& options) {
  check_grid(grid);
  if (tracked_peaks.empty()) throw std::invalid_argument("run_tau_sweep: no tracked peaks");
  const auto dim = dimension(model.n_spins);
  if (psi0.size() != dim) throw std::invalid_argument("run_tau_sweep: psi0 dimension mismatch");

  const VectorR nmr_diag = build_nmr_hamiltonian(nmr);

  SweepRecord record;
  record.grid = grid;
  record.tracked_peaks = tracked_peaks;
  record.amplitudes.resize(static_cast<Eigen::Index>(tracked_peaks.size()), grid.n_tau);

  // Frequency-matched visible dyads per tracked peak, fixed across the sweep.
  std::vector<std::vector<std::pair<int, int>>> matched(tracked_peaks.size());
  for (const auto& [d, u] : visible_dyads(model.n_spins)) {
    const Real freq = nmr_diag[u - 1] - nmr_diag[d - 1];
    for (std::size_t p = 0; p < tracked_peaks.size(); ++p) {
      if (std::abs(freq - tracked_peaks[p].frequency) <= 1e-9) matched[p].emplace_back(d, u);
    }
  }

  // Exact mode: one diagonalization, phases per tau. Trotter mode: one
  // single-increment propagator, accumulated across the sweep.
  std::optional<Eigensystem> eig;
  VectorC coeffs;  // eigenbasis coordinates of psi0
  MatrixC trotter_step;
  VectorC psi = psi0;
  if (options.evolution == EvolutionMode::Exact) {
    eig = exact_spectrum(build_pairing_hamiltonian(model), model.n_spins);
    coeffs = eig->vectors.transpose().cast<Complex>() * psi0;
  } else {
    trotter_step = trotter_propagator(model, grid.delta_tau, options.trotter_steps).matrix;
  }

  for (int k = 0; k < grid.n_tau; ++k) {
    const Real tau = grid.tau(k);
    if (options.evolution == EvolutionMode::Exact) {
      VectorC phased(coeffs.size());
      for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        phased[i] = coeffs[i] * std::exp(Complex{0.0, -eig->values[i] * tau});
      }
      psi = eig->vectors.cast<Complex>() * phased;
    } else if (k > 0) {
      psi = trotter_step * psi;
    }

    if (options.readout == ReadoutMode::Oracle) {
      // Coherence oracle: read the needed rho elements straight off psi.
      for (std::size_t p = 0; p < tracked_peaks.size(); ++p) {
        Complex amp{0.0, 0.0};
        for (const auto& [d, u] : matched[p]) {
          amp += psi[d - 1] * std::conj(psi[u - 1]);
        }
        record.amplitudes(static_cast<Eigen::Index>(p), k) = amp;
      }
    } else {
      const MatrixC rho = psi * psi.adjoint();
      const FidSignal fid =
          fid_signal(rho, nmr_diag, model.n_spins, options.fid_dt, options.fid_samples);
      const NmrSpectrum spectrum = first_ft(fid);
      for (std::size_t p = 0; p < tracked_peaks.size(); ++p) {
        try {
          const Complex raw =
              peak_amplitude(spectrum, tracked_peaks[p], options.fid_window_bins);
          record.amplitudes(static_cast<Eigen::Index>(p), k) =
              raw / static_cast<Real>(options.fid_samples);
        } catch (const AliasingError& err) {
          throw AliasingError(std::string(err.what()) + " (tau index " + std::to_string(k) + ")");
        }
      }
    }
  }
  return record;
}

PairingSpectrum second_ft(const SweepRecord& record, int peak_index,
                          const SecondFtOptions& options) {
  check_grid(record.grid);
  if (peak_index < 0 || peak_index >= static_cast<int>(record.tracked_peaks.size())) {
    throw std::out_of_range("second_ft: peak index out of range");
  }
  if (options.zero_pad < 1) throw std::invalid_argument("second_ft: zero_pad must be >= 1");

  const int m = record.grid.n_tau;
  const int padded = m * options.zero_pad;
  std::vector<Complex> in(static_cast<std::size_t>(padded), Complex{0.0, 0.0});
  for (int k = 0; k < m; ++k) {
    Real w = 1.0;
    if (options.window == WindowKind::Hann) {
      w = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<Real>(k) / static_cast<Real>(m)));
    }
    in[static_cast<std::size_t>(k)] = w * record.amplitudes(peak_index, k);
  }

  std::vector<Complex> out;
  Eigen::FFT<Real> fft;
  fft.fwd(out, in);

  PairingSpectrum spectrum;
  spectrum.resolution = kTwoPi / (static_cast<Real>(padded) * record.grid.delta_tau);
  spectrum.frequencies.resize(padded);
  spectrum.amplitudes.resize(padded);
  spectrum.magnitudes.resize(padded);
  for (int bin = 0; bin < padded; ++bin) {
    const int signed_bin = bin <= padded / 2 ? bin : bin - padded;
    spectrum.frequencies[bin] = spectrum.resolution * static_cast<Real>(signed_bin);
    spectrum.amplitudes[bin] = out[static_cast<std::size_t>(bin)];
    spectrum.magnitudes[bin] = std::abs(out[static_cast<std::size_t>(bin)]);
  }
  return spectrum;
}

std::vector<Real> extract_differences(const PairingSpectrum& spectrum, Real threshold_fraction) {
  if (threshold_fraction <= 0.0 || threshold_fraction >= 1.0) {
    throw std::invalid_argument("extract_differences: threshold_fraction must be in (0, 1)");
  }
  const auto m = spectrum.magnitudes.size();
  if (m == 0) throw std::invalid_argument("extract_differences: empty spectrum");

  const Real peak_floor = threshold_fraction * spectrum.magnitudes.maxCoeff();
  if (peak_floor <= 0.0) return {};

  std::vector<Real> found;
  for (Eigen::Index bin = 0; bin < m; ++bin) {
    const Real mag = spectrum.magnitudes[bin];
    if (mag < peak_floor) continue;
    const Real prev = spectrum.magnitudes[(bin - 1 + m) % m];
    const Real next = spectrum.magnitudes[(bin + 1) % m];
    if (!(mag > prev && mag >= next)) continue;

    // 3-point parabolic refinement on log-magnitude; skip when a neighbor
    // is numerically zero (on-bin tone with a rectangular window), where
    // refinement would chase roundoff.
    Real offset = 0.0;
    if (prev > 1e-12 * mag && next > 1e-12 * mag) {
      const Real lp = std::log(prev);
      const Real lc = std::log(mag);
      const Real ln = std::log(next);
      const Real denom = lp - 2.0 * lc + ln;
      if (denom < 0.0) offset = 0.5 * (lp - ln) / denom;
    }
    found.push_back(spectrum.frequencies[bin] + offset * spectrum.resolution);
  }
  std::sort(found.begin(), found.end());
  return found;
}

LevelReport assign_and_anchor(const std::vector<Real>& differences, const PairingModel& model,
                              const std::optional<Eigensystem>& eigensystem, Real bin_width) {
  LevelReport report;
  report.differences = differences;
  report.reference = -0.5 * model.epsilon.sum();
  for (const Real diff : differences) {
    report.absolute_levels.push_back(report.reference + diff);
  }
  if (!eigensystem) return report;

  // Every ordered pair difference, deduplicated: the assignment candidates.
  struct Candidate {
    Real value;
    int i, j, tag_i, tag_j;
  };
  const auto& values = eigensystem->values;
  std::vector<Candidate> candidates;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    for (Eigen::Index j = 0; j < values.size(); ++j) {
      if (i == j) continue;
      candidates.push_back({values[i] - values[j], static_cast<int>(i), static_cast<int>(j),
                            eigensystem->subspace_tags[static_cast<std::size_t>(i)],
                            eigensystem->subspace_tags[static_cast<std::size_t>(j)]});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  const auto last = std::unique(candidates.begin(), candidates.end(),
                                [](const Candidate& a, const Candidate& b) {
                                  return std::abs(a.value - b.value) <= 1e-12;
                                });
  candidates.erase(last, candidates.end());

  for (const Real diff : differences) {
    LevelAssignment best;
    best.recovered = diff;
    best.residual = std::numeric_limits<Real>::infinity();
    Real runner_up = std::numeric_limits<Real>::infinity();
    for (const Candidate& cand : candidates) {
      const Real res = std::abs(cand.value - diff);
      if (res < best.residual) {
        runner_up = best.residual;
        best.residual = res;
        best.exact = cand.value;
        best.level_i = cand.i;
        best.level_j = cand.j;
        best.tag_i = cand.tag_i;
        best.tag_j = cand.tag_j;
      } else if (res < runner_up) {
        runner_up = res;
      }
    }
    // Ambiguous when a second, numerically distinct exact difference also
    // lies within one bin of the recovered value. Equal exact differences
    // (degenerate pairs) are the same answer, not a tie.
    best.ambiguous = best.residual < bin_width && runner_up < bin_width;
    report.assignments.push_back(best);
  }
  return report;
}

}  // namespace pairspec
