#include "pairspec/spectroscopy.hpp"

#include "pairspec/states.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pairspec;

namespace {

NmrModel default_nmr(int n_spins) {
  VectorR larmor_hz(n_spins);
  for (int i = 0; i < n_spins; ++i) larmor_hz[i] = 100.0 + 10.0 * static_cast<Real>(i);
  return make_uniform_nmr(kTwoPi * larmor_hz, 2.0);
}

std::vector<NmrPeakId> s1_ground_peaks(int n_spins, const VectorR& diag) {
  std::vector<NmrPeakId> peaks;
  const int dim = static_cast<int>(dimension(n_spins));
  for (int k = 1; k <= n_spins; ++k) {
    peaks.push_back(make_peak(dim - (1 << (n_spins - k)), dim, n_spins, diag));
  }
  return peaks;
}

SweepRecord synthetic_record(const VectorC& series, Real delta_tau) {
  SweepRecord record;
  record.grid = TauGrid{delta_tau, static_cast<int>(series.size())};
  record.tracked_peaks = {NmrPeakId{0, 0, 0.0}};
  record.amplitudes.resize(1, series.size());
  record.amplitudes.row(0) = series.transpose();
  return record;
}

}  // namespace

TEST_CASE("sweep column at tau = 0 equals the static coherence") {
  const PairingModel model{2, (VectorR(2) << 1.0, 1.0).finished(), 0.5};
  const NmrModel nmr = default_nmr(2);
  const VectorR diag = build_nmr_hamiltonian(nmr);
  const VectorC psi0 = proposal_initial_state(2);
  const auto peaks = s1_ground_peaks(2, diag);

  const auto record = run_tau_sweep(model, nmr, psi0, TauGrid{0.25, 4}, peaks);
  const MatrixC rho0 = psi0 * psi0.adjoint();
  for (std::size_t p = 0; p < peaks.size(); ++p) {
    const Complex expected = coherence_amplitude(rho0, diag, 2, peaks[p]);
    CHECK(std::abs(record.amplitudes(static_cast<Eigen::Index>(p), 0) - expected) < 1e-13);
  }
}

TEST_CASE("eigenvector initial state keeps a constant amplitude modulus") {
  std::mt19937_64 rng(59);
  const auto model = oracle::random_model(rng, 3);
  const auto eig = exact_spectrum(build_pairing_hamiltonian(model), 3);
  const NmrModel nmr = default_nmr(3);
  const VectorR diag = build_nmr_hamiltonian(nmr);

  // pick an S_1-tagged eigenvector: its density matrix is tau-independent
  Eigen::Index pick = -1;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.subspace_tags[static_cast<std::size_t>(i)] == 1) pick = i;
  }
  REQUIRE(pick >= 0);
  const VectorC psi0 = eig.vectors.col(pick).cast<Complex>();

  const auto record =
      run_tau_sweep(model, nmr, psi0, TauGrid{0.3, 16}, s1_ground_peaks(3, diag));
  for (Eigen::Index p = 0; p < record.amplitudes.rows(); ++p) {
    const Real first = std::abs(record.amplitudes(p, 0));
    for (int k = 1; k < 16; ++k) {
      CHECK(std::abs(record.amplitudes(p, k)) == doctest::Approx(first).epsilon(1e-10));
    }
  }
}

TEST_CASE("sweep series equals the eigenbasis coefficient sum") {
  const PairingModel model{2, (VectorR(2) << 1.0, 1.0).finished(), 0.5};
  const auto eig = exact_spectrum(build_pairing_hamiltonian(model), 2);
  const NmrModel nmr = default_nmr(2);
  const VectorR diag = build_nmr_hamiltonian(nmr);
  const VectorC psi0 = proposal_initial_state(2);
  const VectorC a = eig.vectors.transpose().cast<Complex>() * psi0;

  const TauGrid grid{0.2, 32};
  const auto peaks = s1_ground_peaks(2, diag);
  const auto record = run_tau_sweep(model, nmr, psi0, grid, peaks);

  for (std::size_t p = 0; p < peaks.size(); ++p) {
    const int row = peaks[p].beta - 1;   // more-down label indexes the rho row
    const int col = peaks[p].alpha - 1;  // more-up label indexes the column
    for (int k = 0; k < grid.n_tau; ++k) {
      Complex sum{0.0, 0.0};
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          sum += a[i] * eig.vectors(row, i) * std::conj(a[j] * eig.vectors(col, j)) *
                 std::exp(Complex{0.0, -(eig.values[i] - eig.values[j]) * grid.tau(k)});
        }
      }
      CHECK(std::abs(record.amplitudes(static_cast<Eigen::Index>(p), k) - sum) < 1e-12);
    }
  }
}

TEST_CASE("fid readout reproduces the oracle readout across a sweep") {
  const PairingModel model{3, (VectorR(3) << 0.8, 1.0, 1.2).finished(), 0.3};
  const NmrModel nmr = default_nmr(3);
  const VectorR diag = build_nmr_hamiltonian(nmr);
  const VectorC psi0 = proposal_initial_state(3);
  const auto peaks = s1_ground_peaks(3, diag);
  const TauGrid grid{0.4, 8};

  SweepOptions fid_options;
  fid_options.readout = ReadoutMode::Fid;
  fid_options.fid_dt = 1.0 / 512.0;
  fid_options.fid_samples = 512;

  const auto oracle_rec = run_tau_sweep(model, nmr, psi0, grid, peaks);
  const auto fid_rec = run_tau_sweep(model, nmr, psi0, grid, peaks, fid_options);
  CHECK((oracle_rec.amplitudes - fid_rec.amplitudes).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("aliasing in fid readout names the tau index") {
  const PairingModel model{2, (VectorR(2) << 1.0, 1.0).finished(), 0.5};
  const NmrModel nmr = default_nmr(2);
  const VectorR diag = build_nmr_hamiltonian(nmr);

  SweepOptions options;
  options.readout = ReadoutMode::Fid;
  options.fid_dt = 0.01;  // Nyquist 50 Hz < the ~100 Hz peaks
  options.fid_samples = 64;
  try {
    run_tau_sweep(model, nmr, proposal_initial_state(2), TauGrid{0.2, 4},
                  s1_ground_peaks(2, diag), options);
    FAIL("expected AliasingError");
  } catch (const AliasingError& err) {
    CHECK(std::string(err.what()).find("tau index") != std::string::npos);
  }
}

TEST_CASE("second ft: synthetic tones") {
  SUBCASE("e^{+i 1.0 tau} lands within one bin of +1.0") {
    const Real delta_tau = 0.1;
    VectorC series(64);
    for (int k = 0; k < 64; ++k) {
      series[k] = std::exp(Complex{0.0, 1.0 * delta_tau * k});
    }
    const auto spectrum =
        second_ft(synthetic_record(series, delta_tau), 0, {WindowKind::Rect, 1});
    CHECK(spectrum.resolution == doctest::Approx(kTwoPi / 6.4));
    Eigen::Index best = 0;
    spectrum.magnitudes.maxCoeff(&best);
    CHECK(std::abs(spectrum.frequencies[best] - 1.0) <= spectrum.resolution);
  }

  SUBCASE("constant series concentrates at zero") {
    const auto spectrum = second_ft(
        synthetic_record(VectorC::Constant(32, Complex{1.0, 0.0}), 0.5), 0, {WindowKind::Rect, 1});
    for (Eigen::Index i = 0; i < spectrum.frequencies.size(); ++i) {
      if (spectrum.frequencies[i] != 0.0) CHECK(spectrum.magnitudes[i] < 1e-10 * 32);
    }
    CHECK(spectrum.magnitudes.maxCoeff() == doctest::Approx(32.0));
  }

  SUBCASE("symmetric tone pair gives equal magnitudes") {
    const Real delta_tau = 0.25;
    const int m = 64;
    const Real omega = 6.0 * kTwoPi / (m * delta_tau);  // on-bin
    VectorC series(m);
    for (int k = 0; k < m; ++k) {
      series[k] = std::exp(Complex{0.0, omega * delta_tau * k}) +
                  std::exp(Complex{0.0, -omega * delta_tau * k});
    }
    const auto spectrum = second_ft(synthetic_record(series, delta_tau), 0, {WindowKind::Rect, 1});
    Real positive = 0.0, negative = 0.0;
    for (Eigen::Index i = 0; i < spectrum.frequencies.size(); ++i) {
      if (std::abs(spectrum.frequencies[i] - omega) < 1e-9) positive = spectrum.magnitudes[i];
      if (std::abs(spectrum.frequencies[i] + omega) < 1e-9) negative = spectrum.magnitudes[i];
    }
    CHECK(positive == doctest::Approx(m).epsilon(1e-10));
    CHECK(std::abs(positive - negative) <= 1e-8 * m);
  }
}

TEST_CASE("extract differences") {
  SUBCASE("single on-bin tone, rect window") {
    const Real delta_tau = 0.125;
    const int m = 128;
    const Real omega = 10.0 * kTwoPi / (m * delta_tau);
    VectorC series(m);
    for (int k = 0; k < m; ++k) series[k] = std::exp(Complex{0.0, omega * delta_tau * k});
    const auto spectrum = second_ft(synthetic_record(series, delta_tau), 0, {WindowKind::Rect, 1});
    const auto found = extract_differences(spectrum, 0.5);
    REQUIRE(found.size() == 1);
    CHECK(std::abs(found[0] - omega) < 1e-6);
  }

  SUBCASE("hann window and zero padding keep the refinement tight off-bin") {
    const Real delta_tau = 0.125;
    const int m = 128;
    const Real bin = kTwoPi / (m * delta_tau);
    const Real omega = 10.37 * bin;  // deliberately off-bin
    VectorC series(m);
    for (int k = 0; k < m; ++k) series[k] = std::exp(Complex{0.0, omega * delta_tau * k});
    const auto spectrum = second_ft(synthetic_record(series, delta_tau), 0, {WindowKind::Hann, 4});
    const auto found = extract_differences(spectrum, 0.5);
    REQUIRE(found.size() == 1);
    CHECK(std::abs(found[0] - omega) < 0.05 * bin);
  }

  SUBCASE("zero signal yields an empty list") {
    const auto spectrum =
        second_ft(synthetic_record(VectorC::Zero(16), 0.5), 0, {WindowKind::Rect, 1});
    CHECK(extract_differences(spectrum, 0.5).empty());
  }

  SUBCASE("threshold bounds are enforced") {
    const auto spectrum =
        second_ft(synthetic_record(VectorC::Zero(16), 0.5), 0, {WindowKind::Rect, 1});
    CHECK_THROWS_AS(extract_differences(spectrum, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(extract_differences(spectrum, 1.0), std::invalid_argument);
  }

  SUBCASE("second_ft argument contracts") {
    const auto record = synthetic_record(VectorC::Zero(16), 0.5);
    CHECK_THROWS_AS(second_ft(record, 1), std::out_of_range);
    CHECK_THROWS_AS(second_ft(record, 0, {WindowKind::Rect, 0}), std::invalid_argument);
  }
}

TEST_CASE("resolution law: doubling the grid halves the bin") {
  const PairingModel model{2, (VectorR(2) << 0.9, 1.3).finished(), 0.25};
  const NmrModel nmr = default_nmr(2);
  const VectorR diag = build_nmr_hamiltonian(nmr);
  const VectorC psi0 = proposal_initial_state(2);
  const auto peaks = s1_ground_peaks(2, diag);

  const Real delta_tau = 0.35;
  std::vector<Real> first_peak;
  std::vector<Real> resolutions;
  for (const int m : {128, 256}) {
    const auto record = run_tau_sweep(model, nmr, psi0, TauGrid{delta_tau, m}, peaks);
    const auto spectrum = second_ft(record, 0, {WindowKind::Hann, 4});
    resolutions.push_back(spectrum.resolution);
    const auto found = extract_differences(spectrum, 0.1);
    REQUIRE(!found.empty());
    first_peak.push_back(found.front());
  }
  CHECK(resolutions[0] == doctest::Approx(2.0 * resolutions[1]).epsilon(1e-12));
  CHECK(std::abs(first_peak[0] - first_peak[1]) < kTwoPi / (128.0 * delta_tau));
}

TEST_CASE("recovered frequencies are excited-minus-ground, positive") {
  // Two-level check of the sign convention: with the proposal state at N=2
  // the S_1 <-> S_0 peaks oscillate at E(S_1 level) - E(ground) > 0.
  const PairingModel model{2, (VectorR(2) << 1.0, 1.0).finished(), 0.5};
  const auto eig = exact_spectrum(build_pairing_hamiltonian(model), 2);
  const NmrModel nmr = default_nmr(2);
  const VectorR diag = build_nmr_hamiltonian(nmr);

  const Real range = eig.values[3] - eig.values[0];
  const TauGrid grid{0.5 * kPi / range, 256};
  const auto record =
      run_tau_sweep(model, nmr, proposal_initial_state(2), grid, s1_ground_peaks(2, diag));

  const Real bin = kTwoPi / (grid.n_tau * grid.delta_tau);
  const auto found = extract_differences(second_ft(record, 0), 0.05);
  REQUIRE(found.size() == 2);
  // exact differences: E(S_1 lower) - E(ground) = 0.5, E(S_1 upper) - E(ground) = 1.5
  CHECK(std::abs(found[0] - 0.5) < 1.5 * bin);
  CHECK(std::abs(found[1] - 1.5) < 1.5 * bin);
  for (const Real f : found) CHECK(f > 0.0);
}

TEST_CASE("end-to-end N=3 sweep recovers the S_1 minus ground differences") {
  const PairingModel model{3, (VectorR(3) << 0.8, 1.0, 1.2).finished(), 0.3};
  const auto eig = exact_spectrum(build_pairing_hamiltonian(model), 3);
  const NmrModel nmr = default_nmr(3);
  const VectorR diag = build_nmr_hamiltonian(nmr);

  const Real range = eig.values[7] - eig.values[0];
  const TauGrid grid{0.5 * kPi / range, 256};
  const auto peaks = s1_ground_peaks(3, diag);
  const auto record = run_tau_sweep(model, nmr, proposal_initial_state(3), grid, peaks);

  // exact targets: the three S_1 levels minus the ground level
  std::vector<Real> targets;
  for (Eigen::Index i = 0; i < 8; ++i) {
    if (eig.subspace_tags[static_cast<std::size_t>(i)] == 1) {
      targets.push_back(eig.values[i] - eig.values[0]);
    }
  }
  REQUIRE(targets.size() == 3);

  const Real bin = kTwoPi / (grid.n_tau * grid.delta_tau);
  for (std::size_t p = 0; p < peaks.size(); ++p) {
    const auto found = extract_differences(second_ft(record, static_cast<int>(p)), 0.04);
    for (const Real f : found) {
      Real best = 1e30;
      for (const Real t : targets) best = std::min(best, std::abs(f - t));
      CHECK(best <= 1.5 * bin);
    }
  }
}

TEST_CASE("assign and anchor") {
  const PairingModel model{2, (VectorR(2) << 1.0, 1.0).finished(), 0.5};

  SUBCASE("no differences: report carries only the reference") {
    const auto report = assign_and_anchor({}, model, std::nullopt, 0.1);
    CHECK(report.reference == doctest::Approx(-1.0));
    CHECK(report.differences.empty());
    CHECK(report.absolute_levels.empty());
    CHECK(report.assignments.empty());
  }

  SUBCASE("anchoring the N=2 closed-form levels at -1") {
    const auto eig = exact_spectrum(build_pairing_hamiltonian(model), 2);
    const auto report = assign_and_anchor({0.5, 1.5}, model, eig, 0.01);
    REQUIRE(report.absolute_levels.size() == 2);
    CHECK(report.absolute_levels[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(report.absolute_levels[1] == doctest::Approx(0.5).epsilon(1e-12));
    for (const auto& a : report.assignments) {
      CHECK(a.residual < 1e-12);
      CHECK_FALSE(a.ambiguous);
    }
    CHECK(report.assignments[0].tag_j == 0);  // ground side sits in S_0
    CHECK(report.assignments[0].tag_i == 1);
  }

  SUBCASE("a coarse bin flags ambiguity") {
    const auto eig = exact_spectrum(build_pairing_hamiltonian(model), 2);
    // exact differences 0.5 and 1.0 both lie within one (huge) bin
    const auto report = assign_and_anchor({0.6}, model, eig, 10.0);
    REQUIRE(report.assignments.size() == 1);
    CHECK(report.assignments[0].ambiguous);
  }
}

TEST_CASE("N=3 headline: anchored gap equals the subspace-1 gap") {
  const PairingModel model{3, (VectorR(3) << 0.8, 1.0, 1.2).finished(), 0.3};
  const auto eig = exact_spectrum(build_pairing_hamiltonian(model), 3);
  const NmrModel nmr = default_nmr(3);
  const VectorR diag = build_nmr_hamiltonian(nmr);

  const Real range = eig.values[7] - eig.values[0];
  const TauGrid grid{0.5 * kPi / range, 256};
  const auto record =
      run_tau_sweep(model, nmr, proposal_initial_state(3), grid, s1_ground_peaks(3, diag));
  const Real bin = kTwoPi / (grid.n_tau * grid.delta_tau);

  std::vector<Real> merged;
  for (int p = 0; p < 3; ++p) {
    const auto found = extract_differences(second_ft(record, p), 0.04);
    merged.insert(merged.end(), found.begin(), found.end());
  }
  std::sort(merged.begin(), merged.end());
  REQUIRE(merged.size() >= 2);

  // the two lowest recovered differences bracket the subspace-1 gap
  const Real lowest = merged.front();
  Real second = 0.0;
  for (const Real f : merged) {
    if (f - lowest > bin) {
      second = f;
      break;
    }
  }
  REQUIRE(second != 0.0);

  std::vector<Real> s1;
  for (Eigen::Index i = 0; i < 8; ++i) {
    if (eig.subspace_tags[static_cast<std::size_t>(i)] == 1) s1.push_back(eig.values[i]);
  }
  const Real exact_gap = s1[1] - s1[0];
  CHECK(std::abs((second - lowest) - exact_gap) <= 2.0 * bin);
}
