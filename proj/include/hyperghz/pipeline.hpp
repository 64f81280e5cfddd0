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
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "hyperghz/source.hpp"

namespace hyperghz {

// ---------------------------------------------------------------------------
// Deterministic sampling primitives
// ---------------------------------------------------------------------------

/// splitmix64; small, fast, and identical on every platform.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    Rng r(seed ^ (0xd1342543de82ef95ULL * (stream + 1)));
    return r.next();
}

/// Exact Poisson sampler (chunked Knuth product method, stable for large
/// means).
inline uint64_t sample_poisson(double mean, Rng &rng) {
    if (mean <= 0) {
        return 0;
    }
    uint64_t count = 0;
    while (mean > 0) {
        const double chunk = std::min(mean, 500.0);
        const double limit = std::exp(-chunk);
        uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= rng.u01();
        } while (p > limit);
        count += k - 1;
        mean -= chunk;
    }
    return count;
}

// ---------------------------------------------------------------------------
// Measurement settings and outcome bookkeeping
// ---------------------------------------------------------------------------

/// Per-qubit basis assignment covering every active qubit.
struct MeasurementSetting {
    std::map<QubitAddress, AnalyzerBasis> bases;

    static MeasurementSetting computational(const Register &reg) {
        MeasurementSetting s;
        for (const auto &q : reg) {
            s.bases[q] = AnalyzerBasis::computational();
        }
        return s;
    }

    static MeasurementSetting superposition(const Register &reg, double theta) {
        MeasurementSetting s;
        for (const auto &q : reg) {
            s.bases[q] = AnalyzerBasis::superposition(theta);
        }
        return s;
    }

    const AnalyzerBasis &basis_for(QubitAddress q) const {
        auto it = bases.find(q);
        if (it == bases.end()) {
            throw address_error("measurement setting does not cover " + q.str());
        }
        return it->second;
    }

    bool all_computational() const {
        for (const auto &[q, b] : bases) {
            if (b.is_superposition()) {
                return false;
            }
        }
        return true;
    }

    void validate_covers(const Register &reg) const {
        for (const auto &q : reg) {
            basis_for(q);
        }
    }
};

/// Eigenvalue of the outcome under the product parity observable.
inline int outcome_parity(uint32_t outcome) {
    return (__builtin_popcount(outcome) & 1) ? -1 : +1;
}

/// Outcomes pack the register bits most-significant-first, so the all-ones
/// outcome is 2^N - 1 and the first listed qubit is the top bit.
inline uint32_t pack_outcome(const std::vector<int> &bits) {
    uint32_t key = 0;
    for (int b : bits) {
        key = (key << 1) | static_cast<uint32_t>(b & 1);
    }
    return key;
}

inline int outcome_bit(uint32_t key, size_t index, size_t n_qubits) {
    return static_cast<int>((key >> (n_qubits - 1 - index)) & 1u);
}

/// Integer coincidence counts keyed by the packed outcome. `reg` records the
/// register order the packing used; estimators that reason about photons
/// (noise attribution) require it.
struct OutcomeHistogram {
    std::map<uint32_t, uint64_t> counts;
    uint64_t total_events = 0;
    double duration_s = 0;
    size_t n_qubits = 0;
    Register reg;
    MeasurementSetting setting;

    void add(uint32_t outcome) {
        ++counts[outcome];
        ++total_events;
    }
};

using SparseDistribution = std::map<uint32_t, double>;

// ---------------------------------------------------------------------------
// State assembly
// ---------------------------------------------------------------------------

/// Hyper-encodes every photon of a polarization ensemble: PBS split then
/// spiral phase plates, yielding the canonical POL/PATH/OAM register order.
inline void hyper_encode(Ensemble &ensemble, int n_photons) {
    const Register target = canonical_register(n_photons);
    for (auto &m : ensemble.members) {
        for (int p = 1; p <= n_photons; ++p) {
            pbs_split(m.state, p);
            spp_encode(m.state, p);
        }
        m.state.reorder(target);
    }
}

inline std::vector<QubitAddress> addresses_of_dof(const Register &reg, Dof d) {
    std::vector<QubitAddress> out;
    for (const auto &q : reg) {
        if (q.dof == d) {
            out.push_back(q);
        }
    }
    return out;
}

/// Full generation pipeline for 2*n_pairs photons carrying three DoFs each:
/// fused polarization GHZ, per-photon encoding, bit-flip errors on every
/// encoded qubit, higher-order emission noise at the accepted-event level,
/// and visibility dephasing on the interferometric qubits.
inline GhzSource build_hyper_state(int n_photons, const NoiseParams &noise) {
    noise.validate();
    if (n_photons < 2 || n_photons % 2 != 0) {
        throw config_error("build_hyper_state: photon count must be even and >= 2");
    }
    GhzSource src = ghz_pol_chain(n_photons / 2, noise.pair_fidelity);
    hyper_encode(src.ensemble, n_photons);
    const Register reg = src.ensemble.reg();
    std::vector<QubitAddress> all(reg.begin(), reg.end());
    apply_bitflip(src.ensemble, all, noise.bitflip_prob);
    apply_double_pair_noise(src.ensemble, noise.double_pair_fraction, chain_sources(n_photons / 2));
    apply_visibility_dephasing(src.ensemble, addresses_of_dof(reg, Dof::PATH), noise.spatial_visibility);
    apply_visibility_dephasing(src.ensemble, addresses_of_dof(reg, Dof::OAM), noise.oam_visibility);
    return src;
}

inline Ensemble build_hyper_ghz18(const NoiseParams &noise) {
    return build_hyper_state(6, noise).ensemble;
}

/// One photon in (|H> + |V>)/sqrt2, hyper-encoded into three qubits.
inline Ensemble build_three_dof_photon(const NoiseParams &noise) {
    noise.validate();
    SparseState st = SparseState::basis_state({pol(1)}, 0);
    st.apply_unitary(pol(1), hadamard());
    Ensemble e = Ensemble::pure(std::move(st));
    for (auto &m : e.members) {
        pbs_split(m.state, 1);
        spp_encode(m.state, 1);
    }
    apply_bitflip(e, {pol(1), path(1), oam(1)}, noise.bitflip_prob);
    apply_visibility_dephasing(e, {path(1)}, noise.spatial_visibility);
    apply_visibility_dephasing(e, {oam(1)}, noise.oam_visibility);
    return e;
}

/// One polarization qubit in (|H> + |V>)/sqrt2.
inline Ensemble build_single_polarization(const NoiseParams &noise) {
    noise.validate();
    SparseState st = SparseState::basis_state({pol(1)}, 0);
    st.apply_unitary(pol(1), hadamard());
    Ensemble e = Ensemble::pure(std::move(st));
    apply_bitflip(e, {pol(1)}, noise.bitflip_prob);
    return e;
}

/// Builds the N-qubit sub-experiment used for the fringe panels.
inline Ensemble build_fringe_ensemble(int n_qubits, const NoiseParams &noise) {
    switch (n_qubits) {
        case 1:
            return build_single_polarization(noise);
        case 3:
            return build_three_dof_photon(noise);
        case 12:
            return build_hyper_state(4, noise).ensemble;
        case 18:
            return build_hyper_state(6, noise).ensemble;
        default:
            throw config_error("fringe experiments exist for N in {1, 3, 12, 18}");
    }
}

/// Photons whose OAM qubit passes the OAM-to-polarization converter.
inline int count_oam_photons(const Register &reg) {
    return static_cast<int>(addresses_of_dof(reg, Dof::OAM).size());
}

/// Fraction of events surviving the converters in sampled mode.
inline double converter_keep_fraction(const NoiseParams &noise, const Register &reg) {
    return std::pow(noise.converter_efficiency, count_oam_photons(reg));
}

// ---------------------------------------------------------------------------
// Measurement: physical readout chain
// ---------------------------------------------------------------------------

/// Applies the three-step readout chain of one photon to `state`, assuming
/// any earlier qubits have already been transformed. After the chain, the
/// computational value of each readout address equals the measured outcome:
///   PATH outcome -> the PATH qubit (Mach-Zehnder),
///   POL outcome  -> a fresh AUX qubit recording the analyzer port,
///   OAM outcome  -> the POL qubit, after swap and q-plate conversion.
/// Returns the address holding each measured qubit's outcome bit.
inline std::map<QubitAddress, QubitAddress> apply_readout_chain(SparseState &state,
                                                                const MeasurementSetting &setting) {
    std::map<QubitAddress, QubitAddress> readout;
    std::set<int> photons;
    for (const auto &q : state.reg()) {
        photons.insert(q.photon);
    }
    for (int p : photons) {
        const bool has_pol = state.has(pol(p));
        const bool has_path = state.has(path(p));
        const bool has_oam = state.has(oam(p));
        if (has_path) {
            const AnalyzerBasis &b = setting.basis_for(path(p));
            if (b.is_superposition()) {
                state.apply_unitary(path(p), superposition_rotation(b.theta));
            }
            readout[path(p)] = path(p);
        }
        if (has_pol) {
            state.apply_unitary(pol(p), pol_analyzer_jones(setting.basis_for(pol(p))));
            if (has_oam) {
                // Record the analyzer port on an AUX qubit, reset POL to |H>
                // for the OAM stage, then swap the OAM value into POL.
                const QubitAddress port{p, Dof::AUX};
                state.add_qubit_copy(port, pol(p));
                state.apply_cnot(port, pol(p));
                readout[pol(p)] = port;
                state.apply_cnot(oam(p), pol(p));
                qplate_convert(state, p);
                state.apply_unitary(pol(p), pol_analyzer_jones(setting.basis_for(oam(p))));
                readout[oam(p)] = pol(p);
            } else {
                readout[pol(p)] = pol(p);
            }
        } else if (has_oam) {
            throw contract_error("OAM readout requires the photon's POL qubit");
        }
    }
    return readout;
}

namespace detail {

/// Enumerates classical Pauli masks of a deferred channel, calling
/// visit(selected_addresses, weight) for every branch whose probability is
/// at least `cutoff`. The discarded mass is below cutoff * branch count.
inline void for_each_mask(const std::vector<std::pair<QubitAddress, double>> &probs, double cutoff,
                          std::vector<QubitAddress> &chosen, size_t index, double weight,
                          const std::function<void(const std::vector<QubitAddress> &, double)> &visit) {
    if (weight < cutoff) {
        return;
    }
    if (index == probs.size()) {
        visit(chosen, weight);
        return;
    }
    const auto &[addr, p] = probs[index];
    for_each_mask(probs, cutoff, chosen, index + 1, weight * (1 - p), visit);
    chosen.push_back(addr);
    for_each_mask(probs, cutoff, chosen, index + 1, weight * p, visit);
    chosen.pop_back();
}

inline constexpr double kMaskCutoff = 1e-13;

}  // namespace detail

/// Exact sparse outcome distribution over 2^N outcomes. Deferred channels are
/// expanded into classical masks (discarding below-1e-13 branches, well under
/// the 1e-9 normalization budget); each branch runs through the physical
/// readout chain. Cheap for computational settings at any size; superposition
/// settings are intended for small registers, where the rotated state stays
/// tractable.
inline SparseDistribution outcome_distribution(const Ensemble &ensemble,
                                               const MeasurementSetting &setting) {
    const Register reg = ensemble.reg();
    setting.validate_covers(reg);
    const size_t n = reg.size();
    SparseDistribution dist;

    for (const auto &m : ensemble.members) {
        std::vector<std::pair<QubitAddress, double>> xprobs;
        for (const auto &[q, p] : m.flip_prob) {
            if (p > 0) {
                xprobs.emplace_back(q, p);
            }
        }
        // Z errors are invisible on computationally measured qubits.
        std::vector<std::pair<QubitAddress, double>> zprobs;
        for (const auto &[q, p] : m.zflip_prob) {
            if (p > 0 && setting.basis_for(q).is_superposition()) {
                zprobs.emplace_back(q, p);
            }
        }

        auto run_branch = [&](const SparseState &branch, double branch_weight) {
            SparseState chain = branch;
            auto readout = apply_readout_chain(chain, setting);
            std::vector<int> pos(n);
            for (size_t i = 0; i < n; ++i) {
                pos[i] = chain.position(readout.at(reg[i]));
            }
            for (const auto &[k, a] : chain.amplitudes()) {
                std::vector<int> bits(n);
                for (size_t i = 0; i < n; ++i) {
                    bits[i] = static_cast<int>((k >> pos[i]) & 1u);
                }
                dist[pack_outcome(bits)] += branch_weight * std::norm(a);
            }
        };

        std::vector<QubitAddress> chosen;
        detail::for_each_mask(
            xprobs, detail::kMaskCutoff, chosen, 0, 1.0,
            [&](const std::vector<QubitAddress> &xmask, double xw) {
                SparseState flipped = m.state;
                for (QubitAddress q : xmask) {
                    flipped.apply_x(q);
                }
                std::vector<QubitAddress> zchosen;
                detail::for_each_mask(zprobs, detail::kMaskCutoff, zchosen, 0, 1.0,
                                      [&](const std::vector<QubitAddress> &zmask, double zw) {
                                          SparseState branch = flipped;
                                          for (QubitAddress q : zmask) {
                                              branch.apply_z(q);
                                          }
                                          run_branch(branch, m.weight * xw * zw);
                                      });
            });
    }
    return dist;
}

// ---------------------------------------------------------------------------
// Exact evaluators (deferred channels folded in closed form)
// ---------------------------------------------------------------------------

/// Exact <M_theta^{tensor N}> of the ensemble with every qubit measured in
/// the superposition basis at phase theta. Per branch the observable is a
/// product of purely off-diagonal one-qubit operators, so only
/// complement-key amplitude pairs contribute; deferred X errors mix the two
/// off-diagonal entries and deferred Z errors scale them by the visibility.
inline double exact_parity_expectation(const Ensemble &ensemble, double theta) {
    const Register reg = ensemble.reg();
    const size_t n = reg.size();
    const uint32_t full = (n >= 32) ? 0xffffffffu : ((1u << n) - 1);
    double total = 0;
    for (const auto &m : ensemble.members) {
        std::vector<c64> m01(n), m10(n);
        for (size_t i = 0; i < n; ++i) {
            const double p = m.flip(reg[i]);
            const double v = 1.0 - 2.0 * m.zflip(reg[i]);
            const c64 e_minus = std::polar(1.0, -theta);
            const c64 e_plus = std::polar(1.0, theta);
            m01[i] = v * ((1 - p) * e_minus + p * e_plus);
            m10[i] = v * ((1 - p) * e_plus + p * e_minus);
        }
        c64 value = 0;
        for (const auto &[k, a] : m.state.amplitudes()) {
            const c64 partner = m.state.amplitude(~k & full);
            if (partner == c64(0)) {
                continue;
            }
            c64 factor = a * std::conj(partner);
            for (size_t i = 0; i < n; ++i) {
                factor *= (k & (1u << i)) ? m01[i] : m10[i];
            }
            value += factor;
        }
        total += m.weight * value.real();
    }
    return total;
}

/// Exact probability of one computational outcome (packed key) under the
/// deferred bit-flip channels.
inline double exact_z_probability(const Ensemble &ensemble, uint32_t outcome) {
    const Register reg = ensemble.reg();
    const size_t n = reg.size();
    double total = 0;
    for (const auto &m : ensemble.members) {
        double acc = 0;
        for (const auto &[k, a] : m.state.amplitudes()) {
            double w = std::norm(a);
            for (size_t i = 0; i < n; ++i) {
                const int have = static_cast<int>((k >> i) & 1u);
                const int want = outcome_bit(outcome, i, n);
                const double p = m.flip(reg[i]);
                w *= (have == want) ? (1 - p) : p;
                if (w == 0) {
                    break;
                }
            }
            acc += w;
        }
        total += m.weight * acc;
    }
    return total;
}

/// Population and noise-category masses of the computational-basis
/// distribution, computed exactly per photon block.
struct ZClassification {
    double desired = 0;               // |0...0> and |1...1>
    double consistent_undesired = 0;  // every photon internally agrees
    double disagreeing = 0;           // at least one photon internally broken

    double population() const { return desired; }
};

inline ZClassification classify_z_mass(const Ensemble &ensemble) {
    const Register reg = ensemble.reg();
    const size_t n = reg.size();
    std::map<int, std::vector<size_t>> photon_bits;  // photon -> register indices
    for (size_t i = 0; i < n; ++i) {
        photon_bits[reg[i].photon].push_back(i);
    }
    ZClassification out;
    for (const auto &m : ensemble.members) {
        for (const auto &[k, a] : m.state.amplitudes()) {
            const double w = m.weight * std::norm(a);
            double consistent = 1;  // every photon ends internally equal
            double all0 = 1;
            double all1 = 1;
            for (const auto &[photon, idxs] : photon_bits) {
                double stay0 = 1;  // this photon's bits all end at 0
                double stay1 = 1;
                for (size_t i : idxs) {
                    const int bit = static_cast<int>((k >> i) & 1u);
                    const double p = m.flip(reg[i]);
                    stay0 *= bit ? p : (1 - p);
                    stay1 *= bit ? (1 - p) : p;
                }
                consistent *= stay0 + stay1;
                all0 *= stay0;
                all1 *= stay1;
            }
            out.desired += w * (all0 + all1);
            out.consistent_undesired += w * (consistent - all0 - all1);
            out.disagreeing += w * (1 - consistent);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Event sampling
// ---------------------------------------------------------------------------

/// Samples one detection event: chooses a branch, realizes its deferred Pauli
/// errors, then walks the physical readout chain photon by photon, projecting
/// after each analyzer so the state stays sparse.
inline uint32_t sample_event(const Ensemble &ensemble, const MeasurementSetting &setting, Rng &rng) {
    // branch choice by cumulative weight
    double u = rng.u01() * ensemble.total_weight();
    const Member *chosen = &ensemble.members.back();
    for (const auto &m : ensemble.members) {
        u -= m.weight;
        if (u <= 0) {
            chosen = &m;
            break;
        }
    }
    SparseState state = chosen->state;
    for (const auto &[q, p] : chosen->flip_prob) {
        if (rng.u01() < p) {
            state.apply_x(q);
        }
    }
    for (const auto &[q, p] : chosen->zflip_prob) {
        if (rng.u01() < p) {
            state.apply_z(q);
        }
    }

    const Register reg = state.reg();
    std::map<QubitAddress, int> results;
    auto measure_bit = [&](QubitAddress q) {
        auto p1 = state.project(q, 1);
        if (rng.u01() < p1.probability) {
            state = std::move(p1.state);
            return 1;
        }
        state = state.project(q, 0).state;
        return 0;
    };

    std::set<int> photons;
    for (const auto &q : reg) {
        photons.insert(q.photon);
    }
    for (int p : photons) {
        if (state.has(path(p))) {
            const AnalyzerBasis &b = setting.basis_for(path(p));
            if (b.is_superposition()) {
                state.apply_unitary(path(p), superposition_rotation(b.theta));
            }
            results[path(p)] = measure_bit(path(p));
        }
        if (state.has(pol(p))) {
            const bool has_oam = state.has(oam(p));
            state.apply_unitary(pol(p), pol_analyzer_jones(setting.basis_for(pol(p))));
            const int pol_outcome = measure_bit(pol(p));
            results[pol(p)] = pol_outcome;
            if (has_oam) {
                if (pol_outcome) {
                    state.apply_x(pol(p));  // the reflected port is relabeled |H>
                }
                state.apply_cnot(oam(p), pol(p));
                qplate_convert(state, p);
                state.apply_unitary(pol(p), pol_analyzer_jones(setting.basis_for(oam(p))));
                results[oam(p)] = measure_bit(pol(p));
            }
        }
    }
    std::vector<int> bits(reg.size());
    for (size_t i = 0; i < reg.size(); ++i) {
        bits[i] = results.at(reg[i]);
    }
    return pack_outcome(bits);
}

/// Accumulates Poisson(expected_events) sampled events into a histogram.
inline OutcomeHistogram sample_events(const Ensemble &ensemble, const MeasurementSetting &setting,
                                      double expected_events, double duration_s, uint64_t seed) {
    OutcomeHistogram h;
    h.duration_s = duration_s;
    h.n_qubits = ensemble.reg().size();
    h.reg = ensemble.reg();
    h.setting = setting;
    Rng rng(seed);
    const uint64_t n = sample_poisson(expected_events, rng);
    for (uint64_t i = 0; i < n; ++i) {
        h.add(sample_event(ensemble, setting, rng));
    }
    return h;
}

/// Poisson total with a multinomial split along a fixed distribution.
inline OutcomeHistogram sample_histogram(const SparseDistribution &distribution, double rate_hz,
                                         double duration_s, uint64_t seed) {
    if (rate_hz <= 0 || duration_s < 0) {
        throw config_error("sample_histogram: rate must be positive and duration non-negative");
    }
    OutcomeHistogram h;
    h.duration_s = duration_s;
    Rng rng(seed);
    const uint64_t n = sample_poisson(rate_hz * duration_s, rng);
    std::vector<std::pair<uint32_t, double>> cdf;
    cdf.reserve(distribution.size());
    double acc = 0;
    for (const auto &[k, p] : distribution) {
        acc += p;
        cdf.emplace_back(k, acc);
    }
    for (uint64_t i = 0; i < n; ++i) {
        const double u = rng.u01() * acc;
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u,
                                   [](const auto &e, double val) { return e.second < val; });
        h.add(it == cdf.end() ? cdf.back().first : it->first);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Fringe scans
// ---------------------------------------------------------------------------

struct FringePoint {
    double theta = 0;
    double expectation = 0;
    double stderr_ = 0;
};

struct FringeSeries {
    int n_qubits = 0;
    std::vector<FringePoint> points;
};

struct SamplingPlan {
    double rate_hz = 0.2;
    double duration_s = 7200;
    double event_keep_fraction = 1.0;  // converter losses, sampled mode only
    uint64_t seed = 1;
};

/// Default 19-point grid k*pi/18, a superset of the 18 coherence settings.
inline std::vector<double> default_theta_grid() {
    std::vector<double> grid;
    for (int k = 0; k <= 18; ++k) {
        grid.push_back(k * M_PI / 18.0);
    }
    return grid;
}

/// Parity fringe across the theta grid, all qubits in the superposition
/// basis. Without a sampling plan the expectation is exact and stderr is 0;
/// with one, each grid point draws its own Poissonian acquisition with a
/// per-point derived seed.
inline FringeSeries fringe_scan(const Ensemble &ensemble, const std::vector<double> &theta_grid,
                                const std::optional<SamplingPlan> &sampling = std::nullopt) {
    FringeSeries series;
    series.n_qubits = static_cast<int>(ensemble.reg().size());
    double prev = -1;
    for (double t : theta_grid) {
        if (t < -1e-12 || t > M_PI + 1e-9) {
            throw config_error("fringe_scan: theta grid must lie in [0, pi]");
        }
        if (t <= prev) {
            throw config_error("fringe_scan: theta grid must be strictly increasing");
        }
        prev = t;
    }
    for (size_t i = 0; i < theta_grid.size(); ++i) {
        const double theta = theta_grid[i];
        FringePoint pt;
        pt.theta = theta;
        if (!sampling) {
            pt.expectation = exact_parity_expectation(ensemble, theta);
            pt.stderr_ = 0;
        } else {
            const MeasurementSetting setting = MeasurementSetting::superposition(ensemble.reg(), theta);
            const double expected =
                sampling->rate_hz * sampling->duration_s * sampling->event_keep_fraction;
            OutcomeHistogram h = sample_events(ensemble, setting, expected, sampling->duration_s,
                                               derive_seed(sampling->seed, i));
            if (h.total_events == 0) {
                pt.expectation = 0;
                pt.stderr_ = std::numeric_limits<double>::infinity();
            } else {
                double sum = 0;
                for (const auto &[k, c] : h.counts) {
                    sum += static_cast<double>(c) * outcome_parity(k);
                }
                pt.expectation = sum / static_cast<double>(h.total_events);
                pt.stderr_ = std::sqrt((1 - pt.expectation * pt.expectation) /
                                       static_cast<double>(h.total_events));
            }
        }
        series.points.push_back(pt);
    }
    return series;
}

}  // namespace hyperghz
