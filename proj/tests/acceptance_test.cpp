// Copyright 2026 The hyperghz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
// the measured numbers so a run reads as a checklist.

#include <chrono>
#include <cstdio>

#include <gtest/gtest.h>

#include "hyperghz/hyperghz.hpp"
#include "dense_reference.hpp"

using namespace hyperghz;
using hyperghz::testing::dense_outcome_distribution;
using hyperghz::testing::random_unitary2;
using hyperghz::testing::total_variation;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report_line(const char *id, const char *name, bool pass, const std::string &detail) {
    std::printf("[ACCEPTANCE] %s %s: %s (%s)\n", id, name, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char *pattern, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
    return buf;
}

}  // namespace

TEST(Acceptance, C1_IdealStateAnalytics) {
    const auto t0 = Clock::now();
    Ensemble ideal = build_hyper_ghz18(NoiseParams::ideal());
    FringeSeries fringes = fringe_scan(ideal, default_theta_grid());
    double max_dev = 0;
    for (const auto &p : fringes.points) {
        max_dev = std::max(max_dev, std::abs(p.expectation - (-std::cos(18 * p.theta))));
    }
    std::vector<FringePoint> pts(fringes.points.begin(), fringes.points.begin() + 18);
    const double coherence = coherence18(pts).value;
    const double population = classify_z_mass(ideal).population();
    const double fidelity = ghz_fidelity({population, 0}, {coherence, 0}).value;
    const double elapsed = seconds_since(t0);

    const bool pass = max_dev < 1e-9 && std::abs(coherence - 1) < 1e-9 &&
                      std::abs(population - 1) < 1e-9 && std::abs(fidelity - 1) < 1e-9 &&
                      elapsed < 1.0;
    report_line("C1", "ideal-state analytics", pass,
                fmt("max fringe dev %.2e, coherence %.12f, population %.12f, %.2f s", max_dev,
                    coherence, population, elapsed));
    EXPECT_LT(max_dev, 1e-9);
    EXPECT_NEAR(coherence, 1.0, 1e-9);
    EXPECT_NEAR(population, 1.0, 1e-9);
    EXPECT_NEAR(fidelity, 1.0, 1e-9);
    EXPECT_LT(elapsed, 1.0);
}

TEST(Acceptance, C2_FrequencyMultiplication) {
    const auto t0 = Clock::now();
    bool pass = true;
    std::string detail;
    for (int n : {1, 3, 12, 18}) {
        Ensemble e = build_fringe_ensemble(n, NoiseParams::ideal());
        FringeFit fit = fringe_fit(fringe_scan(e, default_theta_grid()));
        const double ratio = fit.frequency / n;
        detail += fmt("N=%.0f f=%.4f ", static_cast<double>(n), fit.frequency);
        pass = pass && std::abs(ratio - 1.0) <= 0.02;
        EXPECT_NEAR(ratio, 1.0, 0.02) << "N=" << n;
    }
    const double elapsed = seconds_since(t0);
    pass = pass && elapsed < 10.0;
    report_line("C2", "fitted frequency equals N", pass, detail + fmt("in %.2f s", elapsed));
    EXPECT_LT(elapsed, 10.0);
}

TEST(Acceptance, C3_HeadlineReproduction) {
    const auto t0 = Clock::now();
    NoiseParams fitted = calibrate_noise(0.814, 0.602, NoiseParams{});
    RunConfig cfg;
    cfg.noise = fitted;
    cfg.mode = RunMode::SAMPLED;
    cfg.rate_hz = 0.2;
    cfg.duration_s = 7200;
    cfg.seed = 20260810;
    const GhzReport rep = run_full_report(cfg);
    const double elapsed = seconds_since(t0);

    const bool pass = std::abs(rep.population.value - 0.814) <= 0.03 &&
                      std::abs(rep.coherence.value - 0.602) <= 0.03 &&
                      std::abs(rep.fidelity.value - 0.708) <= 0.025 && rep.witness_sigma >= 8 &&
                      elapsed < 300.0;
    report_line("C3", "calibrated headline reproduction", pass,
                fmt("population %.4f, coherence %.4f, fidelity %.4f, witness %.1f sigma",
                    rep.population.value, rep.coherence.value, rep.fidelity.value,
                    rep.witness_sigma) +
                    fmt(", %.1f s", elapsed));
    EXPECT_NEAR(rep.population.value, 0.814, 0.03);
    EXPECT_NEAR(rep.coherence.value, 0.602, 0.03);
    EXPECT_NEAR(rep.fidelity.value, 0.708, 0.025);
    EXPECT_GE(rep.witness_sigma, 8.0);
    EXPECT_LT(elapsed, 300.0);
}

TEST(Acceptance, C4_SnrArithmetic) {
    const double value = snr_from_population(0.814, 18);
    const bool pass = std::abs(value / 5.7e5 - 1.0) <= 0.02;
    report_line("C4", "signal-to-noise arithmetic", pass, fmt("snr %.4g vs 5.7e5", value));
    EXPECT_NEAR(value / 5.7e5, 1.0, 0.02);
}

TEST(Acceptance, C5_RateGain) {
    const double gain = rate_gain(0.2, 2.6e-15);
    const bool pass = std::abs(gain - 13.886) <= 0.001;
    report_line("C5", "rate gain in orders of magnitude", pass, fmt("%.4f orders", gain));
    EXPECT_NEAR(gain, 13.886, 0.001);
}

TEST(Acceptance, C6_GateEquivalenceOracle) {
    Rng rng(660);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Mat2 u = random_unitary2(rng);
        Register reg{oam(1), pol(1)};
        SparseState chain = SparseState::basis_state(reg, 0);
        chain.apply_unitary(oam(1), u);
        SparseState ideal = chain;
        oam_cnot_interferometric(chain, 1);
        ideal.apply_cnot(oam(1), pol(1));
        // align global phase on the dominant amplitude, then compare terms
        c64 phase = 1;
        double best = -1;
        for (const auto &[k, a] : ideal.amplitudes()) {
            if (std::abs(a) > best) {
                best = std::abs(a);
                phase = chain.amplitude(k) / a;
            }
        }
        for (const auto &[k, a] : ideal.amplitudes()) {
            worst = std::max(worst, std::abs(chain.amplitude(k) - phase * a));
        }
        for (const auto &[k, a] : chain.amplitudes()) {
            worst = std::max(worst, std::abs(a - phase * ideal.amplitude(k)));
        }
    }
    const bool pass = worst < 1e-9;
    report_line("C6", "interferometric CNOT equals ideal CNOT", pass,
                fmt("max per-amplitude deviation %.2e over 100 inputs", worst));
    EXPECT_LT(worst, 1e-9);
}

TEST(Acceptance, C7_FusionAndDistributionOracle) {
    GhzSource src = ghz6(NoiseParams::ideal());
    SparseState want = SparseState::basis_state(src.ensemble.reg(), 0);
    want.apply_unitary(want.reg()[0], hadamard());
    for (size_t i = 1; i < 6; ++i) {
        want.apply_cnot(want.reg()[0], want.reg()[i]);
    }
    want.apply_z(want.reg()[0]);
    const bool ray_ok = approx_equal_ray(src.ensemble.members[0].state, want, 1e-9);
    const bool success_ok = std::abs(src.success_probability - 0.25) <= 1e-12;

    double worst_tv = 0;
    {
        NoiseParams noise;
        noise.bitflip_prob = 0.02;
        noise.double_pair_fraction = 0.15;
        Ensemble e = build_hyper_state(2, noise).ensemble;  // six qubits
        Rng rng(770);
        for (int trial = 0; trial < 3; ++trial) {
            MeasurementSetting s;
            for (const auto &q : e.reg()) {
                s.bases[q] = (rng.next() % 2) ? AnalyzerBasis::superposition(rng.u01() * M_PI)
                                              : AnalyzerBasis::computational();
            }
            worst_tv = std::max(
                worst_tv, total_variation(outcome_distribution(e, s), dense_outcome_distribution(e, s)));
        }
        // nine qubits with deferred channels
        Register reg = canonical_register(3);
        SparseState st = SparseState::basis_state(reg, 0);
        st.apply_unitary(reg[0], hadamard());
        for (size_t i = 1; i < 9; ++i) {
            st.apply_cnot(reg[0], reg[i]);
        }
        st.apply_z(reg[0]);
        Ensemble nine = Ensemble::pure(st);
        nine.members[0].flip_prob[path(2)] = 0.05;
        nine.members[0].zflip_prob[oam(2)] = 0.08;
        for (int trial = 0; trial < 2; ++trial) {
            MeasurementSetting s;
            for (const auto &q : reg) {
                s.bases[q] = (rng.next() % 2) ? AnalyzerBasis::superposition(rng.u01() * M_PI)
                                              : AnalyzerBasis::computational();
            }
            worst_tv = std::max(worst_tv, total_variation(outcome_distribution(nine, s),
                                                          dense_outcome_distribution(nine, s)));
        }
    }
    const bool pass = ray_ok && success_ok && worst_tv < 1e-10;
    report_line("C7", "fusion and brute-force distribution oracle", pass,
                fmt("success %.12f, worst TV %.2e", src.success_probability, worst_tv));
    EXPECT_TRUE(ray_ok);
    EXPECT_NEAR(src.success_probability, 0.25, 1e-12);
    EXPECT_LT(worst_tv, 1e-10);
}

TEST(Acceptance, C8_AnalyzerAngleLaw) {
    Rng rng(880);
    double worst = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const double theta = rng.u01() * M_PI;
        const Mat2 u = pol_analyzer_jones(AnalyzerBasis::superposition(theta));
        const Mat2 psi = random_unitary2(rng);
        const c64 v0 = psi(0, 0);
        const c64 v1 = psi(1, 0);
        const double s = 1 / std::sqrt(2.0);
        const double p0 = std::norm(u(0, 0) * v0 + u(0, 1) * v1);
        const double p1 = std::norm(u(1, 0) * v0 + u(1, 1) * v1);
        const double t0 = std::norm(s * (v0 + std::polar(1.0, -theta) * v1));
        const double t1 = std::norm(s * (v0 - std::polar(1.0, -theta) * v1));
        worst = std::max({worst, std::abs(p0 - t0), std::abs(p1 - t1)});
    }
    const bool pass = worst < 1e-10;
    report_line("C8", "wave-plate analyzer projection law", pass,
                fmt("worst probability deviation %.2e over 50 angles", worst));
    EXPECT_LT(worst, 1e-10);
}

TEST(Acceptance, C9_NoiseAttribution) {
    // single channel active: the classifier must blame the right category
    NoiseParams dp_only = NoiseParams::ideal();
    dp_only.double_pair_fraction = 0.113;
    const ZClassification dp_cls = classify_z_mass(build_hyper_ghz18(dp_only));
    const double dp_noise = dp_cls.consistent_undesired + dp_cls.disagreeing;
    const double dp_correct = dp_cls.consistent_undesired / dp_noise;

    NoiseParams flip_only = NoiseParams::ideal();
    flip_only.bitflip_prob = 0.0044;
    const ZClassification flip_cls = classify_z_mass(build_hyper_ghz18(flip_only));
    const double flip_noise = flip_cls.consistent_undesired + flip_cls.disagreeing;
    const double flip_correct = flip_cls.disagreeing / flip_noise;

    const bool single_ok = dp_correct >= 0.95 && flip_correct >= 0.95;
    report_line("C9a", "single-channel attribution", single_ok,
                fmt("double-pair correct %.4f, bit-flip correct %.4f", dp_correct, flip_correct));
    EXPECT_GE(dp_correct, 0.95);
    EXPECT_GE(flip_correct, 0.95);

    // shipped defaults: recover the reported noise split within +-0.02.
    // The double-pair estimate sits below the band edge in this model (see
    // the README's noise-model notes): half of the contaminated events remain
    // on the logical components and pair infidelity adds photon-consistent
    // events of its own, so the recoverable double-pair share is ~0.087
    // rather than 0.113. The assertion stays at the stated tolerance.
    const NoiseAttribution attr = attribute_noise(classify_z_mass(build_hyper_ghz18(NoiseParams{})));
    const bool defaults_ok = std::abs(attr.double_pair_fraction - 0.113) <= 0.02 &&
                             std::abs(attr.bitflip_fraction - 0.073) <= 0.02;
    report_line("C9b", "default-parameter attribution", defaults_ok,
                fmt("double-pair %.4f vs 0.113, bit-flip %.4f vs 0.073", attr.double_pair_fraction,
                    attr.bitflip_fraction));
    EXPECT_NEAR(attr.double_pair_fraction, 0.113, 0.02);
    EXPECT_NEAR(attr.bitflip_fraction, 0.073, 0.02);
}

TEST(Acceptance, C10_StatisticalHonesty) {
    Ensemble e = build_hyper_ghz18(NoiseParams{});
    const double theta = M_PI / 36;  // mid-fringe, far from |<M>| = 1
    const MeasurementSetting setting = MeasurementSetting::superposition(e.reg(), theta);
    std::vector<double> values;
    double stderr_sum = 0;
    for (uint64_t seed = 0; seed < 200; ++seed) {
        OutcomeHistogram h = sample_events(e, setting, 1440, 7200, derive_seed(1010, seed));
        const ValueWithError v = expectation_from_histogram(h);
        values.push_back(v.value);
        stderr_sum += v.stderr_;
    }
    double mean = 0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double var = 0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(values.size() - 1);
    const double empirical_sd = std::sqrt(var);
    const double reported = stderr_sum / static_cast<double>(values.size());
    const double ratio = empirical_sd / reported;
    const bool pass = ratio > 0.85 && ratio < 1.15;
    report_line("C10", "stderr matches empirical spread", pass,
                fmt("empirical %.5f vs reported %.5f (ratio %.3f)", empirical_sd, reported, ratio));
    EXPECT_GT(ratio, 0.85);
    EXPECT_LT(ratio, 1.15);
}
