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

/// Jones-matrix constructors and post-selected projections for every optical
/// element of the apparatus. Sign conventions are pinned by four behaviors
/// (see docs/conventions.md): HWP at 22.5 deg maps |H> to (|H>+|V>)/sqrt2,
/// HWP at 45 deg maps |H> to |V>, and QWP at -45 deg maps (|H>-i|V>)/sqrt2
/// to |H> and (|H>+i|V>)/sqrt2 to |V>, both with the same output phase.

#pragma once

#include <utility>
#include <vector>

#include "hyperghz/sparse_state.hpp"

namespace hyperghz {

/// Wave-plate / Dove-prism rotation angle in degrees.
struct ElementAngle {
    double degrees = 0;

    ElementAngle() = default;
    ElementAngle(double deg) : degrees(deg) {
        if (!std::isfinite(deg)) {
            throw config_error("element angle must be finite");
        }
    }

    double reduced_radians() const { return deg2rad(std::fmod(degrees, 360.0)); }
};

/// Per-qubit measurement basis: computational {|0>,|1>} or the superposition
/// pair (|0> +- e^{i theta} |1>)/sqrt2 with theta in [0, pi].
struct AnalyzerBasis {
    enum class Kind { COMPUTATIONAL, SUPERPOSITION };

    Kind kind = Kind::COMPUTATIONAL;
    double theta = 0;  // radians, only meaningful for SUPERPOSITION

    static AnalyzerBasis computational() { return AnalyzerBasis{}; }
    static AnalyzerBasis superposition(double theta) {
        if (theta < -1e-12 || theta > M_PI + 1e-9) {
            throw config_error("superposition basis phase must lie in [0, pi]");
        }
        return AnalyzerBasis{Kind::SUPERPOSITION, theta};
    }

    bool is_superposition() const { return kind == Kind::SUPERPOSITION; }
};

/// Half-wave plate with fast axis at `angle`.
inline Mat2 hwp_matrix(ElementAngle angle) {
    const double t = 2 * angle.reduced_radians();
    return Mat2{{c64(std::cos(t)), c64(std::sin(t)), c64(std::sin(t)), c64(-std::cos(t))}};
}

/// Quarter-wave plate with fast axis at `angle`.
inline Mat2 qwp_matrix(ElementAngle angle) {
    const double t = angle.reduced_radians();
    const double c = std::cos(t);
    const double s = std::sin(t);
    const c64 pre = std::polar(1.0, -M_PI / 4);
    const c64 i(0, 1);
    return Mat2{{pre * (c * c + i * s * s), pre * ((1.0 - i) * s * c),
                 pre * ((1.0 - i) * s * c), pre * (s * s + i * c * c)}};
}

/// Dove prism rotated at `angle`: |R> picks up e^{-i 2 theta}, |L> e^{+i 2 theta}.
inline Mat2 dove_matrix(ElementAngle angle) {
    const double t = angle.reduced_radians();
    return Mat2{{std::polar(1.0, -2 * t), c64(0), c64(0), std::polar(1.0, 2 * t)}};
}

/// Basis-change rotation for a superposition measurement: after applying it,
/// a computational readout of outcome o projects the qubit onto
/// (|0> + (-1)^o e^{i theta} |1>)/sqrt2, the eigenbasis of
/// cos(theta) sigma_x + sin(theta) sigma_y.
inline Mat2 superposition_rotation(double theta) {
    return hadamard() * phase_gate(-theta);
}

/// Splits a photon on a PBS: PATH becomes a fresh copy of POL (H->U, V->D).
inline void pbs_split(SparseState &state, int photon) {
    if (state.has(path(photon))) {
        throw address_error("pbs_split: " + path(photon).str() + " is already active");
    }
    state.position(pol(photon));  // POL must be active
    state.add_qubit_copy(path(photon), pol(photon));
}

/// Spiral phase plates: OAM becomes a fresh copy of PATH (U->R, D->L).
inline void spp_encode(SparseState &state, int photon) {
    if (state.has(oam(photon))) {
        throw address_error("spp_encode: " + oam(photon).str() + " is already active");
    }
    state.position(path(photon));
    state.add_qubit_copy(oam(photon), path(photon));
}

struct FuseResult {
    SparseState state;
    double probability = 0;
};

/// PBS fusion of two photons: coincidence post-selection keeps the equal
/// polarization subspace span{|H H>, |V V>}, preserving relative phases
/// exactly. Probability 0 marks the impossible-outcome branch.
inline FuseResult pbs_fuse(const SparseState &state, int photon_a, int photon_b) {
    const uint32_t ma = 1u << state.position(pol(photon_a));
    const uint32_t mb = 1u << state.position(pol(photon_b));
    auto equal_pol = [&](uint32_t k) { return ((k & ma) != 0) == ((k & mb) != 0); };
    double kept_norm = 0;
    const double total = state.norm2();
    for (const auto &[k, a] : state.amplitudes()) {
        if (equal_pol(k)) {
            kept_norm += std::norm(a);
        }
    }
    const double probability = total > 0 ? kept_norm / total : 0.0;
    if (probability < kImpossibleTol) {
        return FuseResult{SparseState{}, 0.0};
    }
    FuseResult res;
    res.probability = probability;
    res.state = state.filtered(equal_pol, 1.0 / std::sqrt(kept_norm));
    res.state.set_weight(state.weight() * probability);
    return res;
}

/// Mach-Zehnder readout of one photon's spatial qubit. The open configuration
/// (computational basis) projects PATH directly; the closed configuration
/// applies the prism phase and the 50/50 recombiner so that outcome o
/// projects onto (|U> + (-1)^o e^{i theta} |D>)/sqrt2.
struct AnalyzerOutcome {
    int outcome = 0;
    double probability = 0;
    SparseState state;
};

inline std::vector<AnalyzerOutcome> spatial_analyzer(const SparseState &state, int photon,
                                                     const AnalyzerBasis &basis) {
    SparseState rotated = state;
    if (basis.is_superposition()) {
        rotated.apply_unitary(path(photon), superposition_rotation(basis.theta));
    }
    std::vector<AnalyzerOutcome> out;
    for (int o = 0; o < 2; ++o) {
        auto proj = rotated.project(path(photon), o);
        out.push_back(AnalyzerOutcome{o, proj.probability, std::move(proj.state)});
    }
    return out;
}

/// Wave-plate settings (qwp_deg, hwp_deg) for the polarization analyzer.
/// Computational basis: (0, 0). Superposition(theta): (45, 22.5 - theta/4)
/// with theta converted to degrees.
inline std::pair<double, double> pol_analyzer_angles(const AnalyzerBasis &basis) {
    if (!basis.is_superposition()) {
        return {0.0, 0.0};
    }
    return {45.0, 22.5 - rad2deg(basis.theta) / 4.0};
}

/// Jones matrix of the polarization analyzer before its PBS: the photon
/// traverses the QWP first, then the HWP.
inline Mat2 pol_analyzer_jones(const AnalyzerBasis &basis) {
    auto [qwp_deg, hwp_deg] = pol_analyzer_angles(basis);
    return hwp_matrix(ElementAngle(hwp_deg)) * qwp_matrix(ElementAngle(qwp_deg));
}

/// Ideal swap between a photon's OAM and POL qubits: CNOT(OAM -> POL)
/// followed by CNOT(POL -> OAM). For POL input |H> this moves the OAM value
/// onto POL and parks the OAM qubit at |R>.
inline void oam_swap_ideal(SparseState &state, int photon) {
    state.apply_cnot(oam(photon), pol(photon));
    state.apply_cnot(pol(photon), oam(photon));
}

/// The double-PBS / Dove-prism interferometer realizing CNOT(OAM -> POL) for
/// POL input |H>, composed element by element: HWP(22.5), PBS split onto an
/// internal arm, Dove prisms at +-22.5 in the two arms, HWP(45), PBS
/// recombination, QWP(-45). The internal arm qubit lives only inside this
/// function.
inline void oam_cnot_interferometric(SparseState &state, int photon) {
    const QubitAddress arm{photon, Dof::AUX};
    if (state.has(arm)) {
        throw address_error("oam_cnot_interferometric: internal arm address is occupied");
    }
    state.position(oam(photon));
    state.apply_unitary(pol(photon), hwp_matrix(ElementAngle(22.5)));
    state.add_qubit_copy(arm, pol(photon));
    // Dove prisms: up arm (bit 0) at +22.5 deg, down arm at -22.5 deg.
    Mat4 dove;
    dove(0, 0) = std::polar(1.0, -M_PI / 4);  // arm U, |R>
    dove(1, 1) = std::polar(1.0, +M_PI / 4);  // arm U, |L>
    dove(2, 2) = std::polar(1.0, +M_PI / 4);  // arm D, |R>
    dove(3, 3) = std::polar(1.0, -M_PI / 4);  // arm D, |L>
    state.apply_unitary(arm, oam(photon), dove);
    state.apply_unitary(pol(photon), hwp_matrix(ElementAngle(45)));
    // Second PBS: the arm toggles for V so both components leave in one beam.
    state.apply_cnot(pol(photon), arm);
    state.remove_qubit(arm);
    state.apply_unitary(pol(photon), qwp_matrix(ElementAngle(-45)));
}

/// q-plate sandwiched between two QWPs: on the span of {|R>|H>, |L>|V>} it
/// transfers the OAM value onto POL's existing correlation, resets the OAM
/// mode to the Gaussian |G>, and drops the OAM qubit from the register.
inline void qplate_convert(SparseState &state, int photon) {
    const uint32_t mo = 1u << state.position(oam(photon));
    const uint32_t mp = 1u << state.position(pol(photon));
    for (const auto &[k, a] : state.amplitudes()) {
        if (((k & mo) != 0) != ((k & mp) != 0)) {
            throw contract_error("qplate_convert: state leaves span{|R H>, |L V>} on photon " +
                                 std::to_string(photon));
        }
    }
    state.apply_cnot(pol(photon), oam(photon));
    state.remove_qubit(oam(photon));
}

}  // namespace hyperghz
