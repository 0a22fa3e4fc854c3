// The full protocol: sweep the protocol time tau, record each tracked NMR
// peak's complex amplitude, Fourier-transform the series over tau, and read
// level differences of H_p off the resulting spectrum.
//
// For a tracked peak (alpha, beta) the recorded series is
//
//   A(tau) = rho_{beta,alpha}(tau)
//          = sum_{i,j} a_i b_{i,beta} conj(a_j b_{j,alpha}) e^{-i (E_i - E_j) tau},
//
// so under the same forward DFT as the first stage a component lands at the
// signed frequency E_j - E_i with j supported on alpha's subspace and i on
// beta's. With the proposal state and peaks (alpha in S_1, beta = 2^N) every
// recovered frequency is an excited-minus-ground difference, positive.
#pragma once

#include "pairspec/dynamics.hpp"
#include "pairspec/model.hpp"
#include "pairspec/readout.hpp"
#include "pairspec/types.hpp"

#include <optional>
#include <vector>

namespace pairspec {

struct TauGrid {
  Real delta_tau = 0.0;
  int n_tau = 0;  // tau_k = k * delta_tau, k = 0..n_tau-1

  Real tau(int k) const { return delta_tau * static_cast<Real>(k); }
};

enum class EvolutionMode { Exact, Trotter };
enum class ReadoutMode { Oracle, Fid };
enum class WindowKind { Rect, Hann };

struct SweepOptions {
  EvolutionMode evolution = EvolutionMode::Exact;
  int trotter_steps = 32;  // product-formula steps per delta_tau increment
  ReadoutMode readout = ReadoutMode::Oracle;
  Real fid_dt = 0.0;       // Fid mode only
  int fid_samples = 0;
  int fid_window_bins = 0;
};

struct SweepRecord {
  TauGrid grid;
  std::vector<NmrPeakId> tracked_peaks;
  MatrixC amplitudes;  // one row per peak, one column per tau
};

struct SecondFtOptions {
  WindowKind window = WindowKind::Hann;
  int zero_pad = 4;  // transform length multiplier, >= 1
};

struct PairingSpectrum {
  VectorR frequencies;  // signed angular, natural FFT bin order
  VectorC amplitudes;
  VectorR magnitudes;     // |amplitudes|
  Real resolution = 0.0;  // bin spacing 2 pi / (n_bins * delta_tau)
};

struct LevelAssignment {
  Real recovered = 0.0;
  Real exact = 0.0;
  Real residual = 0.0;
  int level_i = -1;  // eigenvalue indices with exact = E[i] - E[j]
  int level_j = -1;
  int tag_i = -1;    // subspace tags of the two levels
  int tag_j = -1;
  bool ambiguous = false;
};

struct LevelReport {
  std::vector<Real> differences;
  Real reference = 0.0;  // E of the all-down state, -sum(eps)/2
  std::vector<Real> absolute_levels;  // reference + difference
  std::vector<LevelAssignment> assignments;  // validation mode only
};

/// Steps 1-3 of the protocol for every tau on the grid. The pairing
/// Hamiltonian is diagonalized once and reused across the sweep in exact
/// mode; in Trotter mode the single-increment propagator is reused
/// cumulatively. AliasingErrors from the FID readout are rethrown with the
/// offending tau index attached.
SweepRecord run_tau_sweep(const PairingModel& model, const NmrModel& nmr, const VectorC& psi0,
                          const TauGrid& grid, const std::vector<NmrPeakId>& tracked_peaks,
                          const SweepOptions& options = {});

/// The second (discrete) Fourier transform of one tracked peak's series.
PairingSpectrum second_ft(const SweepRecord& record, int peak_index,
                          const SecondFtOptions& options = {});

/// Local spectral maxima at or above threshold_fraction of the global
/// maximum, refined by 3-point parabolic interpolation of log-magnitude,
/// sorted ascending. Empty for an identically-zero spectrum.
std::vector<Real> extract_differences(const PairingSpectrum& spectrum, Real threshold_fraction);

/// Anchor recovered differences at the known lowest level -sum(eps)/2; with
/// an Eigensystem, additionally assign each difference to the nearest exact
/// E_i - E_j and flag assignments with a competitor within one bin.
LevelReport assign_and_anchor(const std::vector<Real>& differences, const PairingModel& model,
                              const std::optional<Eigensystem>& eigensystem, Real bin_width);

}  // namespace pairspec
