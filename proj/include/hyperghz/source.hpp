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

#pragma once

#include <cstdint>
#include <vector>

#include "hyperghz/elements.hpp"
#include "hyperghz/ensemble.hpp"

namespace hyperghz {

/// Channels expand into explicit branches only while the ensemble stays
/// below this size; beyond it they are recorded per qubit and folded in
/// exactly at evaluation time.
inline constexpr size_t kBranchLimit = 10000;

/// Calibratable description of every imperfection in the experiment.
struct NoiseParams {
    double pair_fidelity = 0.98;        // Werner fidelity of each entangled pair
    double double_pair_fraction = 0.113;  // accepted events from higher-order emission
    double bitflip_prob = 0.0044;       // per encoded qubit, optical-element errors
    double spatial_visibility = 0.994;  // Mach-Zehnder interferometers
    double oam_visibility = 0.996;      // OAM-to-polarization converters
    double converter_efficiency = 0.92;  // per-photon OAM readout efficiency
    uint64_t seed = 1;

    static NoiseParams ideal() {
        NoiseParams p;
        p.pair_fidelity = 1.0;
        p.double_pair_fraction = 0.0;
        p.bitflip_prob = 0.0;
        p.spatial_visibility = 1.0;
        p.oam_visibility = 1.0;
        p.converter_efficiency = 1.0;
        return p;
    }

    void validate() const {
        auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
        if (!in01(double_pair_fraction) || !in01(bitflip_prob) || !in01(spatial_visibility) ||
            !in01(oam_visibility) || !in01(converter_efficiency) || !in01(pair_fidelity)) {
            throw config_error("noise parameters must lie in [0, 1]");
        }
    }
};

/// Werner-form entangled pair over the polarization qubits of two photons:
/// v |psi-><psi-| + (1 - v) I/4 with v = (4F - 1)/3, decomposed into the four
/// Bell states so that <psi-|rho|psi-> equals `pair_fidelity` exactly.
inline Ensemble bell_pair(double pair_fidelity, int photon_a, int photon_b) {
    if (pair_fidelity < 0.25 || pair_fidelity > 1.0) {
        throw domain_error("bell_pair: fidelity " + std::to_string(pair_fidelity) +
                           " is unreachable by a Werner state");
    }
    const double v = (4.0 * pair_fidelity - 1.0) / 3.0;
    const double delta = (1.0 - v) / 4.0;
    const Register reg{pol(photon_a), pol(photon_b)};

    auto make_bell = [&](bool phi_type, double sign) {
        SparseState st = SparseState::basis_state(reg, 0b00);
        st.apply_unitary(reg[0], hadamard());
        st.apply_cnot(reg[0], reg[1]);  // (|00> + |11>)/sqrt2
        if (!phi_type) {
            st.apply_x(reg[1]);  // (|01> + |10>)/sqrt2
        }
        if (sign < 0) {
            st.apply_z(reg[0]);  // flips the relative sign
        }
        return st;
    };

    Ensemble e;
    auto push = [&](double w, SparseState st) {
        if (w > 0) {
            e.members.push_back(Member{w, std::move(st), {}, {}});
        }
    };
    push(v + delta, make_bell(false, -1.0));  // psi-: weight equals F
    push(delta, make_bell(false, +1.0));      // psi+
    push(delta, make_bell(true, +1.0));       // phi+
    push(delta, make_bell(true, -1.0));       // phi-
    return e;
}

/// One down-conversion source feeding the fusion chain. The chain photon is
/// the one whose beam traverses the fusion PBSs; its partner exits directly.
struct PairSource {
    int off_chain_photon;
    int chain_photon;
};

inline std::vector<PairSource> chain_sources(int n_pairs) {
    std::vector<PairSource> s;
    for (int j = 1; j <= n_pairs; ++j) {
        s.push_back(PairSource{2 * j - 1, 2 * j});
    }
    return s;
}

struct GhzSource {
    Ensemble ensemble;
    double success_probability = 1.0;
};

/// Polarization GHZ state over 2*n_pairs photons: Werner pairs on photons
/// (1,2), (3,4), ... are fused along the chain (2,4), (4,6), ..., then local
/// bit flips on the odd photons canonicalize the ideal branch to
/// (|H...H> - |V...V>)/sqrt2 up to a global phase. Post-selection succeeds
/// with probability (1/2)^(n_pairs - 1) for ideal pairs.
inline GhzSource ghz_pol_chain(int n_pairs, double pair_fidelity) {
    if (n_pairs < 1) {
        throw config_error("ghz_pol_chain: need at least one pair");
    }
    Ensemble combined = bell_pair(pair_fidelity, 1, 2);
    for (int j = 2; j <= n_pairs; ++j) {
        Ensemble next = bell_pair(pair_fidelity, 2 * j - 1, 2 * j);
        Ensemble merged;
        for (const auto &a : combined.members) {
            for (const auto &b : next.members) {
                merged.members.push_back(Member{a.weight * b.weight, tensor(a.state, b.state), {}, {}});
            }
        }
        combined = std::move(merged);
    }

    double success = 0;
    Ensemble fused;
    for (auto &m : combined.members) {
        SparseState st = std::move(m.state);
        double branch_p = 1.0;
        bool dead = false;
        for (int k = 1; k < n_pairs; ++k) {
            FuseResult r = pbs_fuse(st, 2 * k, 2 * k + 2);
            if (r.probability <= 0) {
                dead = true;
                break;
            }
            branch_p *= r.probability;
            st = std::move(r.state);
        }
        if (dead) {
            continue;
        }
        for (int p = 1; p <= 2 * n_pairs; p += 2) {
            st.apply_x(pol(p));
        }
        success += m.weight * branch_p;
        fused.members.push_back(Member{m.weight * branch_p, std::move(st), {}, {}});
    }
    if (fused.members.empty()) {
        throw contract_error("ghz_pol_chain: post-selection removed every branch");
    }
    fused.normalize();
    return GhzSource{std::move(fused), success};
}

inline GhzSource ghz6(const NoiseParams &noise) {
    return ghz_pol_chain(3, noise.pair_fidelity);
}

/// Independent X error with probability p on each listed qubit. Branches are
/// expanded while the ensemble stays small; otherwise the channel is recorded
/// per qubit and folded in exactly downstream.
inline void apply_bitflip(Ensemble &ensemble, const std::vector<QubitAddress> &addresses, double p) {
    if (p < 0 || p > 1) {
        throw config_error("apply_bitflip: probability outside [0, 1]");
    }
    if (p == 0 || addresses.empty()) {
        return;
    }
    const double expansion = static_cast<double>(ensemble.members.size()) *
                             std::pow(2.0, static_cast<double>(addresses.size()));
    if (expansion <= static_cast<double>(kBranchLimit)) {
        for (QubitAddress q : addresses) {
            std::vector<Member> out;
            out.reserve(2 * ensemble.members.size());
            for (auto &m : ensemble.members) {
                if (m.weight * (1 - p) > 0) {
                    Member keep = m;
                    keep.weight = m.weight * (1 - p);
                    out.push_back(std::move(keep));
                }
                if (m.weight * p > 0) {
                    Member flip = std::move(m);
                    flip.weight *= p;
                    flip.state.apply_x(q);
                    out.push_back(std::move(flip));
                }
            }
            ensemble.members = std::move(out);
        }
        return;
    }
    for (auto &m : ensemble.members) {
        for (QubitAddress q : addresses) {
            m.flip_prob[q] = combine_flip_prob(m.flip(q), p);
        }
    }
}

/// Phase damping from finite interferometer visibility: Z with probability
/// (1 - V)/2 per listed qubit, which scales that qubit's fringe contrast by
/// exactly V and leaves computational-basis statistics untouched.
inline void apply_visibility_dephasing(Ensemble &ensemble, const std::vector<QubitAddress> &addresses,
                                       double visibility) {
    if (visibility < 0 || visibility > 1) {
        throw config_error("apply_visibility_dephasing: visibility outside [0, 1]");
    }
    const double q = (1.0 - visibility) / 2.0;
    if (q == 0 || addresses.empty()) {
        return;
    }
    const double expansion = static_cast<double>(ensemble.members.size()) *
                             std::pow(2.0, static_cast<double>(addresses.size()));
    if (expansion <= static_cast<double>(kBranchLimit)) {
        for (QubitAddress a : addresses) {
            std::vector<Member> out;
            out.reserve(2 * ensemble.members.size());
            for (auto &m : ensemble.members) {
                if (m.weight * (1 - q) > 0) {
                    Member keep = m;
                    keep.weight = m.weight * (1 - q);
                    out.push_back(std::move(keep));
                }
                if (m.weight * q > 0) {
                    Member flip = std::move(m);
                    flip.weight *= q;
                    flip.state.apply_z(a);
                    out.push_back(std::move(flip));
                }
            }
            ensemble.members = std::move(out);
        }
        return;
    }
    for (auto &m : ensemble.members) {
        for (QubitAddress a : addresses) {
            m.zflip_prob[a] = combine_flip_prob(m.zflip(a), q);
        }
    }
}

/// Higher-order emission noise at the accepted-event level. With probability
/// `fraction` one source is replaced: the event decoheres in the
/// computational basis, the replaced source's chain photon carries the value
/// the fusion post-selection imprinted on the surviving chain, and its
/// partner photon's whole block is overwritten by a fresh uniformly random
/// logic value. Global coherence is destroyed while every photon keeps its
/// internal degree-of-freedom correlations.
inline void apply_double_pair_noise(Ensemble &ensemble, double fraction,
                                    const std::vector<PairSource> &sources) {
    if (fraction < 0 || fraction > 1) {
        throw config_error("apply_double_pair_noise: fraction outside [0, 1]");
    }
    if (fraction == 0 || sources.empty()) {
        return;
    }
    const Register reg = ensemble.reg();
    auto photon_addrs = [&](int photon) {
        std::vector<QubitAddress> qs;
        for (const auto &a : reg) {
            if (a.photon == photon) {
                qs.push_back(a);
            }
        }
        return qs;
    };

    std::vector<Member> out;
    for (auto &m : ensemble.members) {
        if (fraction < 1.0) {
            Member survivor = m;
            survivor.weight = m.weight * (1 - fraction);
            out.push_back(std::move(survivor));
        }
        const double norm = m.state.norm2();
        for (const auto &src : sources) {
            const auto off_qs = photon_addrs(src.off_chain_photon);
            const auto chain_qs = photon_addrs(src.chain_photon);
            for (const auto &[pattern, amp] : m.state.amplitudes()) {
                const double branch_prob = std::norm(amp) / norm;
                for (int value = 0; value < 2; ++value) {
                    Member b;
                    b.weight = m.weight * fraction * branch_prob * 0.5 /
                               static_cast<double>(sources.size());
                    if (b.weight <= 0) {
                        continue;
                    }
                    uint32_t key = pattern;
                    for (QubitAddress q : off_qs) {
                        const uint32_t mask = 1u << m.state.position(q);
                        key = value ? (key | mask) : (key & ~mask);
                    }
                    b.state = SparseState::basis_state(reg, key);
                    b.state.set_weight(m.state.weight());
                    b.flip_prob = m.flip_prob;
                    b.zflip_prob = m.zflip_prob;
                    for (QubitAddress q : off_qs) {
                        b.flip_prob.erase(q);
                        b.zflip_prob.erase(q);
                    }
                    for (QubitAddress q : chain_qs) {
                        b.flip_prob.erase(q);
                        b.zflip_prob.erase(q);
                    }
                    out.push_back(std::move(b));
                }
            }
        }
    }
    ensemble.members = std::move(out);
    ensemble.normalize();
}

}  // namespace hyperghz
