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

#include "hyperghz/elements.hpp"

#include <gtest/gtest.h>

#include "hyperghz/pipeline.hpp"
#include "dense_reference.hpp"

using namespace hyperghz;
using hyperghz::testing::random_unitary2;

namespace {

SparseState single_pol(c64 alpha, c64 beta) {
    SparseState s = SparseState::basis_state({pol(1)}, 0);
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    s.apply_unitary(pol(1), Mat2{{alpha / n, -std::conj(beta / n), beta / n, std::conj(alpha / n)}});
    return s;
}

}  // namespace

TEST(WavePlates, HwpPinnedBehaviors) {
    // 22.5 deg: |H> -> (|H> + |V>)/sqrt2, exactly
    Mat2 h22 = hwp_matrix(ElementAngle(22.5));
    EXPECT_NEAR(std::abs(h22(0, 0) - c64(1 / std::sqrt(2.0))), 0, 1e-12);
    EXPECT_NEAR(std::abs(h22(1, 0) - c64(1 / std::sqrt(2.0))), 0, 1e-12);
    // 45 deg: |H> -> |V>
    Mat2 h45 = hwp_matrix(ElementAngle(45));
    EXPECT_NEAR(std::abs(h45(0, 0)), 0, 1e-12);
    EXPECT_NEAR(std::abs(h45(1, 0) - c64(1)), 0, 1e-12);
    // 0 deg: |H> -> |H>, phase only on |V>
    Mat2 h0 = hwp_matrix(ElementAngle(0));
    EXPECT_NEAR(std::abs(h0(0, 0) - c64(1)), 0, 1e-12);
    EXPECT_NEAR(std::abs(h0(0, 1)), 0, 1e-12);
    EXPECT_NEAR(std::abs(h0(1, 1) + c64(1)), 0, 1e-12);
}

TEST(WavePlates, HwpSquaresToIdentity) {
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        const double a = rng.u01() * 360 - 180;
        Mat2 h = hwp_matrix(ElementAngle(a));
        EXPECT_TRUE(h.is_unitary(1e-12));
        Mat2 sq = h * h;
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                EXPECT_NEAR(std::abs(sq(r, c) - (r == c ? c64(1) : c64(0))), 0, 1e-12) << "angle " << a;
            }
        }
    }
}

TEST(WavePlates, QwpMinus45PinnedPair) {
    Mat2 q = qwp_matrix(ElementAngle(-45));
    EXPECT_TRUE(q.is_unitary(1e-12));
    const double s = 1 / std::sqrt(2.0);
    // (|H> - i|V>)/sqrt2 -> |H> as a ray
    c64 h = q(0, 0) * s + q(0, 1) * c64(0, -s);
    c64 v = q(1, 0) * s + q(1, 1) * c64(0, -s);
    EXPECT_NEAR(std::abs(h), 1, 1e-12);
    EXPECT_NEAR(std::abs(v), 0, 1e-12);
    // (|H> + i|V>)/sqrt2 -> |V> as a ray
    h = q(0, 0) * s + q(0, 1) * c64(0, s);
    v = q(1, 0) * s + q(1, 1) * c64(0, s);
    EXPECT_NEAR(std::abs(h), 0, 1e-12);
    EXPECT_NEAR(std::abs(v), 1, 1e-12);
}

TEST(WavePlates, QwpZeroIsDiagonal) {
    Mat2 q = qwp_matrix(ElementAngle(0));
    EXPECT_NEAR(std::abs(q(0, 1)), 0, 1e-12);
    EXPECT_NEAR(std::abs(q(1, 0)), 0, 1e-12);
    EXPECT_NEAR(std::abs(q(0, 0)), 1, 1e-12);
}

TEST(DovePrism, PinnedPhases) {
    Mat2 d = dove_matrix(ElementAngle(22.5));
    EXPECT_NEAR(std::abs(d(0, 0) - std::polar(1.0, -M_PI / 4)), 0, 1e-12);
    EXPECT_NEAR(std::abs(d(1, 1) - std::polar(1.0, M_PI / 4)), 0, 1e-12);
    Mat2 d0 = dove_matrix(ElementAngle(0));
    EXPECT_NEAR(std::abs(d0(0, 0) - c64(1)), 0, 1e-12);
    EXPECT_NEAR(std::abs(d0(1, 1) - c64(1)), 0, 1e-12);
    // 90 deg: diag(-1, -1), identity as a ray
    Mat2 d90 = dove_matrix(ElementAngle(90));
    EXPECT_NEAR(std::abs(d90(0, 0) + c64(1)), 0, 1e-12);
    EXPECT_NEAR(std::abs(d90(1, 1) + c64(1)), 0, 1e-12);
}

TEST(PbsSplit, CopiesPolarizationOntoPath) {
    SparseState s = single_pol(c64(0.6), c64(0.0, 0.8));
    const c64 a = s.amplitude(0);
    const c64 b = s.amplitude(1);
    pbs_split(s, 1);
    EXPECT_NEAR(std::abs(s.amplitude(0b00) - a), 0, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitude(0b11) - b), 0, 1e-12);
}

TEST(PbsSplit, TrivialBasisStates) {
    SparseState h = SparseState::basis_state({pol(1)}, 0);
    pbs_split(h, 1);
    EXPECT_EQ(h.amplitude(0b00), c64(1));
    SparseState v = SparseState::basis_state({pol(1)}, 1);
    pbs_split(v, 1);
    EXPECT_EQ(v.amplitude(0b11), c64(1));
}

TEST(PbsSplit, PathAlreadyActiveRejected) {
    SparseState s = SparseState::basis_state({pol(1), path(1)}, 0);
    EXPECT_THROW(pbs_split(s, 1), address_error);
}

TEST(SppEncode, CopiesPathOntoOam) {
    SparseState s = single_pol(c64(1 / std::sqrt(2.0)), c64(0, 1 / std::sqrt(2.0)));
    pbs_split(s, 1);
    spp_encode(s, 1);
    EXPECT_EQ(s.term_count(), 2u);
    EXPECT_NEAR(std::abs(s.amplitude(0b000)), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(std::abs(s.amplitude(0b111)), 1 / std::sqrt(2.0), 1e-12);
}

TEST(SppEncode, RequiresPath) {
    SparseState s = SparseState::basis_state({pol(1)}, 0);
    EXPECT_THROW(spp_encode(s, 1), address_error);
}

TEST(PbsFuse, TwoSingletsKeepHalf) {
    Ensemble p1 = bell_pair(1.0, 1, 2);
    Ensemble p2 = bell_pair(1.0, 3, 4);
    SparseState joint = tensor(p1.members[0].state, p2.members[0].state);
    FuseResult r = pbs_fuse(joint, 2, 4);
    EXPECT_NEAR(r.probability, 0.5, 1e-12);
    EXPECT_EQ(r.state.term_count(), 2u);
    // surviving terms: |H V H V> and |V H V H> with equal positive amplitudes
    // register order [pol1, pol2, pol3, pol4], bit = 1 for V
    EXPECT_NEAR(std::abs(r.state.amplitude(0b1010) - c64(1 / std::sqrt(2.0))), 0, 1e-12);
    EXPECT_NEAR(std::abs(r.state.amplitude(0b0101) - c64(1 / std::sqrt(2.0))), 0, 1e-12);
}

TEST(PbsFuse, EqualPolarizationsPassUnchanged) {
    SparseState s = SparseState::basis_state({pol(2), pol(4)}, 0b00);
    FuseResult r = pbs_fuse(s, 2, 4);
    EXPECT_NEAR(r.probability, 1.0, 1e-12);
    EXPECT_EQ(r.state.amplitude(0), c64(1));
}

TEST(PbsFuse, OppositePolarizationsImpossible) {
    SparseState s = SparseState::basis_state({pol(2), pol(4)}, 0b10);
    FuseResult r = pbs_fuse(s, 2, 4);
    EXPECT_EQ(r.probability, 0.0);
    EXPECT_TRUE(r.state.empty());
}

TEST(PbsFuse, RelativePhasesPreservedExactly) {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        SparseState a = single_pol(std::polar(rng.u01() + 0.1, rng.u01() * 6),
                                   std::polar(rng.u01() + 0.1, rng.u01() * 6));
        SparseState b = SparseState::basis_state({pol(2)}, 0);
        b.apply_unitary(pol(2), random_unitary2(rng));
        // relabel photon 1 -> photon 2 conflict: build joint on (1, 2)
        SparseState joint = tensor(a, b);
        FuseResult r = pbs_fuse(joint, 1, 2);
        if (r.probability == 0) {
            continue;
        }
        // every surviving amplitude is the original scaled by one real factor
        const double scale = 1 / std::sqrt(r.probability);
        for (const auto &[k, amp] : r.state.amplitudes()) {
            EXPECT_NEAR(std::abs(amp - joint.amplitude(k) * scale), 0, 1e-12);
        }
    }
}

TEST(SpatialAnalyzer, ConstructivePort) {
    SparseState s = SparseState::basis_state({pol(1), path(1)}, 0);
    s.apply_unitary(path(1), hadamard());  // (|U> + |D>)/sqrt2
    auto outcomes = spatial_analyzer(s, 1, AnalyzerBasis::superposition(0));
    EXPECT_NEAR(outcomes[0].probability, 1.0, 1e-12);
    EXPECT_NEAR(outcomes[1].probability, 0.0, 1e-12);
}

TEST(SpatialAnalyzer, DestructivePort) {
    SparseState s = SparseState::basis_state({pol(1), path(1)}, 0);
    s.apply_unitary(path(1), hadamard());
    s.apply_z(path(1));  // (|U> - |D>)/sqrt2
    auto outcomes = spatial_analyzer(s, 1, AnalyzerBasis::superposition(0));
    EXPECT_NEAR(outcomes[0].probability, 0.0, 1e-12);
    EXPECT_NEAR(outcomes[1].probability, 1.0, 1e-12);
}

TEST(SpatialAnalyzer, QuarterPhaseSplitsEvenly) {
    SparseState s = SparseState::basis_state({pol(1), path(1)}, 0);
    s.apply_unitary(path(1), hadamard());
    auto outcomes = spatial_analyzer(s, 1, AnalyzerBasis::superposition(M_PI / 2));
    EXPECT_NEAR(outcomes[0].probability, 0.5, 1e-12);
    EXPECT_NEAR(outcomes[1].probability, 0.5, 1e-12);
}

TEST(SpatialAnalyzer, OutcomeProbabilitiesSumToOne) {
    Rng rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        SparseState s = SparseState::basis_state({pol(1), path(1)}, 0);
        s.apply_unitary(pol(1), random_unitary2(rng));
        s.apply_unitary(path(1), random_unitary2(rng));
        s.apply_cnot(pol(1), path(1));
        const double theta = rng.u01() * M_PI;
        auto outcomes = spatial_analyzer(s, 1, AnalyzerBasis::superposition(theta));
        EXPECT_NEAR(outcomes[0].probability + outcomes[1].probability, 1.0, 1e-12);
        auto comp = spatial_analyzer(s, 1, AnalyzerBasis::computational());
        EXPECT_NEAR(comp[0].probability + comp[1].probability, 1.0, 1e-12);
    }
}

TEST(PolAnalyzer, PaperAngles) {
    auto [q0, h0] = pol_analyzer_angles(AnalyzerBasis::computational());
    EXPECT_DOUBLE_EQ(q0, 0.0);
    EXPECT_DOUBLE_EQ(h0, 0.0);
    auto [q1, h1] = pol_analyzer_angles(AnalyzerBasis::superposition(0));
    EXPECT_DOUBLE_EQ(q1, 45.0);
    EXPECT_DOUBLE_EQ(h1, 22.5);
    auto [q2, h2] = pol_analyzer_angles(AnalyzerBasis::superposition(M_PI));
    EXPECT_DOUBLE_EQ(q2, 45.0);
    EXPECT_NEAR(h2, -22.5, 1e-12);
}

TEST(PolAnalyzer, ProjectsOntoSuperpositionBasis) {
    // For 50 random theta, the wave-plate composition reproduces the
    // projection probabilities of (|H> +- e^{i theta}|V>)/sqrt2 within 1e-10.
    Rng rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        const double theta = rng.u01() * M_PI;
        const Mat2 u = pol_analyzer_jones(AnalyzerBasis::superposition(theta));
        const Mat2 psi = random_unitary2(rng);
        const c64 v0 = psi(0, 0);
        const c64 v1 = psi(1, 0);
        const double p0 = std::norm(u(0, 0) * v0 + u(0, 1) * v1);
        const double p1 = std::norm(u(1, 0) * v0 + u(1, 1) * v1);
        const double s = 1 / std::sqrt(2.0);
        const double t0 = std::norm(s * (v0 + std::polar(1.0, -theta) * v1));
        const double t1 = std::norm(s * (v0 - std::polar(1.0, -theta) * v1));
        EXPECT_NEAR(p0, t0, 1e-10);
        EXPECT_NEAR(p1, t1, 1e-10);
    }
}

TEST(OamSwap, TransfersOamValueOntoPol) {
    Rng rng(61);
    const Mat2 u = random_unitary2(rng);
    Register reg{oam(1), pol(1)};
    SparseState s = SparseState::basis_state(reg, 0);
    s.apply_unitary(oam(1), u);  // (a|R> + b|L>)|H>
    oam_swap_ideal(s, 1);
    // expect (a|H> + b|V>)|R>: oam bit 0 in every term
    EXPECT_NEAR(std::abs(s.amplitude(0b00) - u(0, 0)), 0, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitude(0b10) - u(1, 0)), 0, 1e-12);
    EXPECT_EQ(s.amplitude(0b01), c64(0));
}

TEST(OamSwap, BasisStates) {
    Register reg{oam(1), pol(1)};
    SparseState r = SparseState::basis_state(reg, 0b00);  // |R>|H>
    oam_swap_ideal(r, 1);
    EXPECT_EQ(r.amplitude(0b00), c64(1));
    SparseState l = SparseState::basis_state(reg, 0b01);  // |L>|H>
    oam_swap_ideal(l, 1);
    EXPECT_EQ(l.amplitude(0b10), c64(1));  // |V>|R>
}

TEST(OamCnotInterferometric, MethodsChainMatchesIdealCnot) {
    Rng rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const Mat2 u = random_unitary2(rng);
        Register reg{oam(1), pol(1)};
        SparseState chain = SparseState::basis_state(reg, 0);
        chain.apply_unitary(oam(1), u);
        SparseState ideal = chain;
        oam_cnot_interferometric(chain, 1);
        ideal.apply_cnot(oam(1), pol(1));
        EXPECT_TRUE(approx_equal_ray(chain, ideal, 1e-9));
        EXPECT_EQ(chain.reg(), reg);  // internal arm removed
    }
}

TEST(OamCnotInterferometric, TrivialInputIsFixed) {
    Register reg{oam(1), pol(1)};
    SparseState s = SparseState::basis_state(reg, 0b00);
    oam_cnot_interferometric(s, 1);
    SparseState want = SparseState::basis_state(reg, 0b00);
    EXPECT_TRUE(approx_equal_ray(s, want, 1e-9));
}

TEST(QPlate, ConvertsAndRemovesOam) {
    Register reg{oam(1), pol(1)};
    SparseState rh = SparseState::basis_state(reg, 0b00);  // |R>|H>
    qplate_convert(rh, 1);
    EXPECT_EQ(rh.num_qubits(), 1u);
    EXPECT_EQ(rh.amplitude(0), c64(1));  // |H>

    SparseState lv = SparseState::basis_state(reg, 0b11);  // |L>|V>
    qplate_convert(lv, 1);
    EXPECT_EQ(lv.amplitude(1), c64(1));  // |V>
}

TEST(QPlate, LinearOnItsDomain) {
    Rng rng(83);
    const Mat2 u = random_unitary2(rng);
    Register reg{oam(1), pol(1)};
    SparseState s = SparseState::basis_state(reg, 0);
    s.apply_unitary(oam(1), u);
    s.apply_cnot(oam(1), pol(1));  // a|RH> + b|LV>
    qplate_convert(s, 1);
    EXPECT_EQ(s.num_qubits(), 1u);
    EXPECT_NEAR(std::abs(s.amplitude(0) - u(0, 0)), 0, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitude(1) - u(1, 0)), 0, 1e-12);
}

TEST(QPlate, OutsideDomainRejected) {
    Register reg{oam(1), pol(1)};
    SparseState s = SparseState::basis_state(reg, 0b01);  // |L>|H>
    EXPECT_THROW(qplate_convert(s, 1), contract_error);
}

TEST(ElementAngle, NonFiniteRejected) {
    EXPECT_THROW(ElementAngle(std::numeric_limits<double>::infinity()), config_error);
}

TEST(AnalyzerBasis, ThetaRangeEnforced) {
    EXPECT_THROW(AnalyzerBasis::superposition(-0.5), config_error);
    EXPECT_THROW(AnalyzerBasis::superposition(3.5), config_error);
    EXPECT_NO_THROW(AnalyzerBasis::superposition(M_PI));
}
