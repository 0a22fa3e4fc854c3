// Simulated NMR measurement chain. The free-induction signal is
//
//   s(t) = Tr( e^{-i H_nmr t} rho e^{+i H_nmr t} sum_k sigma_k^+ ),
//
// which, H_nmr being diagonal, reduces to the visible one-flip coherences
// rho_{d,u} oscillating at e^{-i (E_d - E_u) t}, where d = u + 2^(N-k) is the
// configuration with one extra down-spin. The spectrum is the plain forward
// DFT S(w_m) = sum_k s(t_k) e^{-i w_m t_k}, so each visible coherence lands
// at the signed frequency E_u - E_d with complex amplitude rho_{d,u} * M.
//
// A peak is identified by the label pair (alpha, beta) = (u, d) and carries
// frequency E_alpha - E_beta; coherence_amplitude evaluates the same complex
// amplitude in closed form, which the FID+DFT path must reproduce.
#pragma once

#include "pairspec/basis.hpp"
#include "pairspec/model.hpp"
#include "pairspec/types.hpp"

#include <utility>
#include <vector>

namespace pairspec {

struct FidSignal {
  VectorC samples;
  Real dt = 0.0;
};

struct NmrSpectrum {
  VectorR frequencies;  // signed angular, natural FFT bin order
  VectorC amplitudes;
  Real dt = 0.0;
  Real resolution = 0.0;  // bin spacing 2 pi / (M dt)
};

struct NmrPeakId {
  int alpha = 0;        // the more-up label (one fewer down-spin)
  int beta = 0;         // the more-down label
  Real frequency = 0.0; // E_nmr^alpha - E_nmr^beta
};

/// All ordered pairs (d, u) with transition_weight(d, u) = 1, i.e. every
/// coherence the collective sigma^+ readout can see.
std::vector<std::pair<int, int>> visible_dyads(int n_spins);

/// Peak id for the transition between labels a and b (any order); throws if
/// they do not differ by exactly one spin flip.
NmrPeakId make_peak(int a, int b, int n_spins, const VectorR& nmr_diagonal);

/// Number of visible dyads sharing this peak's frequency (within 1e-9);
/// > 1 means distinct transitions overlap and their amplitudes add.
int peak_multiplicity(const NmrPeakId& peak, int n_spins, const VectorR& nmr_diagonal);

/// Synthesize the FID at t_k = k dt, k = 0..n_samples-1.
FidSignal fid_signal(const MatrixC& rho, const VectorR& nmr_diagonal, int n_spins, Real dt,
                     int n_samples);

/// Forward DFT of the FID with signed frequencies in (-pi/dt, pi/dt].
NmrSpectrum first_ft(const FidSignal& fid);

/// Complex sum of spectrum amplitudes over +-window_bins (circular) around
/// the bin nearest the peak frequency. Throws AliasingError when the peak
/// frequency is at or beyond Nyquist.
Complex peak_amplitude(const NmrSpectrum& spectrum, const NmrPeakId& peak, int window_bins);

/// Closed-form peak amplitude: the sum of rho_{d,u} over visible dyads whose
/// frequency E_u - E_d matches the peak's within 1e-9. The FID+DFT estimate
/// of the same quantity is peak_amplitude / n_samples on a commensurate grid.
Complex coherence_amplitude(const MatrixC& rho, const VectorR& nmr_diagonal, int n_spins,
                            const NmrPeakId& peak);

}  // namespace pairspec
