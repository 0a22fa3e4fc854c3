#include "pairspec/readout.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <stdexcept>
#include <string>

namespace pairspec {

namespace {

constexpr Real kFrequencyMatchTol = 1e-9;

void check_rho(const MatrixC& rho, int n_spins) {
  if (rho.rows() != dimension(n_spins) || rho.cols() != dimension(n_spins)) {
    throw std::invalid_argument("readout: density matrix dimension does not match n_spins");
  }
}

}  // namespace

std::vector<std::pair<int, int>> visible_dyads(int n_spins) {
  std::vector<std::pair<int, int>> dyads;
  const int dim = static_cast<int>(dimension(n_spins));
  dyads.reserve(static_cast<std::size_t>(n_spins) * (static_cast<std::size_t>(dim) / 2));
  for (int u = 1; u <= dim; ++u) {
    for (const int d : lowering_image({u, n_spins})) {
      dyads.emplace_back(d, u);
    }
  }
  return dyads;
}

NmrPeakId make_peak(int a, int b, int n_spins, const VectorR& nmr_diagonal) {
  const int alpha = std::min(a, b);  // fewer down-spins == smaller label
  const int beta = std::max(a, b);
  if (transition_weight({beta, n_spins}, {alpha, n_spins}) != 1) {
    throw std::invalid_argument("make_peak: labels " + std::to_string(a) + ", " +
                                std::to_string(b) + " do not differ by one spin flip");
  }
  return NmrPeakId{alpha, beta, nmr_diagonal[alpha - 1] - nmr_diagonal[beta - 1]};
}

int peak_multiplicity(const NmrPeakId& peak, int n_spins, const VectorR& nmr_diagonal) {
  int count = 0;
  for (const auto& [d, u] : visible_dyads(n_spins)) {
    const Real freq = nmr_diagonal[u - 1] - nmr_diagonal[d - 1];
    if (std::abs(freq - peak.frequency) <= kFrequencyMatchTol) ++count;
  }
  return count;
}

FidSignal fid_signal(const MatrixC& rho, const VectorR& nmr_diagonal, int n_spins, Real dt,
                     int n_samples) {
  check_rho(rho, n_spins);
  if (n_samples < 2) throw std::invalid_argument("fid_signal: need n_samples >= 2");
  if (dt <= 0.0) throw std::invalid_argument("fid_signal: dt must be positive");

  // Collect the visible coherences once, then synthesize.
  std::vector<Complex> amps;
  std::vector<Real> freqs;
  for (const auto& [d, u] : visible_dyads(n_spins)) {
    const Complex amp = rho(d - 1, u - 1);
    if (amp == Complex{0.0, 0.0}) continue;
    amps.push_back(amp);
    freqs.push_back(nmr_diagonal[d - 1] - nmr_diagonal[u - 1]);
  }

  FidSignal fid{VectorC::Zero(n_samples), dt};
  for (int k = 0; k < n_samples; ++k) {
    const Real t = dt * static_cast<Real>(k);
    Complex s{0.0, 0.0};
    for (std::size_t p = 0; p < amps.size(); ++p) {
      s += amps[p] * std::exp(Complex{0.0, -freqs[p] * t});
    }
    fid.samples[k] = s;
  }
  return fid;
}

NmrSpectrum first_ft(const FidSignal& fid) {
  const auto m = fid.samples.size();
  if (m < 2) throw std::invalid_argument("first_ft: need at least 2 samples");

  std::vector<Complex> in(fid.samples.data(), fid.samples.data() + m);
  std::vector<Complex> out;
  Eigen::FFT<Real> fft;
  fft.fwd(out, in);

  NmrSpectrum spectrum;
  spectrum.dt = fid.dt;
  spectrum.resolution = kTwoPi / (static_cast<Real>(m) * fid.dt);
  spectrum.amplitudes = Eigen::Map<const VectorC>(out.data(), m);
  spectrum.frequencies.resize(m);
  for (Eigen::Index bin = 0; bin < m; ++bin) {
    const auto signed_bin = bin <= m / 2 ? bin : bin - m;
    spectrum.frequencies[bin] = spectrum.resolution * static_cast<Real>(signed_bin);
  }
  return spectrum;
}

Complex peak_amplitude(const NmrSpectrum& spectrum, const NmrPeakId& peak, int window_bins) {
  const auto m = spectrum.amplitudes.size();
  const Real nyquist = kPi / spectrum.dt;
  if (std::abs(peak.frequency) >= nyquist) {
    throw AliasingError("peak (" + std::to_string(peak.alpha) + ", " + std::to_string(peak.beta) +
                        ") frequency " + std::to_string(peak.frequency) +
                        " is at or beyond the Nyquist limit " + std::to_string(nyquist));
  }
  const auto signed_bin = static_cast<Eigen::Index>(std::lround(peak.frequency / spectrum.resolution));
  const Eigen::Index center = ((signed_bin % m) + m) % m;
  Complex sum{0.0, 0.0};
  for (Eigen::Index offset = -window_bins; offset <= window_bins; ++offset) {
    const Eigen::Index bin = (center + offset % m + m) % m;
    sum += spectrum.amplitudes[bin];
  }
  return sum;
}

Complex coherence_amplitude(const MatrixC& rho, const VectorR& nmr_diagonal, int n_spins,
                            const NmrPeakId& peak) {
  check_rho(rho, n_spins);
  Complex sum{0.0, 0.0};
  for (const auto& [d, u] : visible_dyads(n_spins)) {
    const Real freq = nmr_diagonal[u - 1] - nmr_diagonal[d - 1];
    if (std::abs(freq - peak.frequency) <= kFrequencyMatchTol) {
      sum += rho(d - 1, u - 1);
    }
  }
  return sum;
}

}  // namespace pairspec
