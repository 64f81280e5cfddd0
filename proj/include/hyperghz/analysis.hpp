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

#include <limits>
#include <utility>

#include "hyperghz/pipeline.hpp"

namespace hyperghz {

struct ValueWithError {
    double value = 0;
    double stderr_ = 0;
};

/// <M> = sum_s n_s v_s / N with Poisson-propagated stderr sqrt((1 - <M>^2)/N).
inline ValueWithError expectation_from_histogram(const OutcomeHistogram &h) {
    if (h.total_events == 0) {
        throw insufficient_data_error("expectation_from_histogram: empty histogram");
    }
    double sum = 0;
    for (const auto &[k, c] : h.counts) {
        sum += static_cast<double>(c) * outcome_parity(k);
    }
    const double n = static_cast<double>(h.total_events);
    const double value = sum / n;
    return {value, std::sqrt(std::max(0.0, 1 - value * value) / n)};
}

/// Off-diagonal GHZ coherence from parity expectations at the 18 phases
/// theta_k = k*pi/18: (1/18) * sum_k (-1)^{k+1} <M_k>. The 18 settings are
/// independent acquisitions, so their errors add in quadrature.
inline ValueWithError coherence18(const std::vector<FringePoint> &points) {
    if (points.size() != 18) {
        throw contract_error("coherence18: exactly 18 expectations required");
    }
    double value = 0;
    double var = 0;
    for (int k = 0; k < 18; ++k) {
        const double expected_theta = k * M_PI / 18.0;
        if (std::abs(points[static_cast<size_t>(k)].theta - expected_theta) > 1e-9) {
            throw contract_error("coherence18: point " + std::to_string(k) +
                                 " is not at k*pi/18");
        }
        const double sign = (k % 2 == 0) ? -1.0 : +1.0;  // (-1)^(k+1)
        value += sign * points[static_cast<size_t>(k)].expectation;
        var += points[static_cast<size_t>(k)].stderr_ * points[static_cast<size_t>(k)].stderr_;
    }
    return {value / 18.0, std::sqrt(var) / 18.0};
}

inline ValueWithError coherence18(const FringeSeries &series) {
    std::vector<FringePoint> pts(series.points.begin(),
                                 series.points.begin() + std::min<size_t>(series.points.size(), 18));
    return coherence18(pts);
}

/// Summed probability of |0...0> and |1...1> in a computational-basis run.
inline ValueWithError population(const OutcomeHistogram &h) {
    if (!h.setting.bases.empty() && !h.setting.all_computational()) {
        throw contract_error("population: histogram was not taken in the computational basis");
    }
    if (h.total_events == 0) {
        throw insufficient_data_error("population: empty histogram");
    }
    const uint32_t ones = (h.n_qubits >= 32) ? 0xffffffffu : ((1u << h.n_qubits) - 1);
    uint64_t good = 0;
    auto it = h.counts.find(0);
    if (it != h.counts.end()) {
        good += it->second;
    }
    it = h.counts.find(ones);
    if (it != h.counts.end()) {
        good += it->second;
    }
    const double n = static_cast<double>(h.total_events);
    const double value = static_cast<double>(good) / n;
    return {value, std::sqrt(std::max(0.0, value * (1 - value)) / n)};
}

/// Fidelity of a GHZ state from its two witnesses: (P + C)/2.
inline ValueWithError ghz_fidelity(const ValueWithError &population, const ValueWithError &coherence) {
    return {(population.value + coherence.value) / 2.0,
            std::sqrt(population.stderr_ * population.stderr_ + coherence.stderr_ * coherence.stderr_) /
                2.0};
}

/// Statistical distance of the fidelity above the 0.5 entanglement witness
/// threshold; +infinity for exact (zero-error) data.
inline double witness_sigma(double fidelity, double stderr_value) {
    if (stderr_value < 0) {
        throw domain_error("witness_sigma: negative error");
    }
    if (stderr_value == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return (fidelity - 0.5) / stderr_value;
}

/// Ratio of the average desired component to the average undesired one.
/// Populations within rounding of one carry no undesired mass and return the
/// +infinity sentinel.
inline double snr_from_population(double population_value, size_t n_qubits) {
    const double cells = std::pow(2.0, static_cast<double>(n_qubits)) - 2.0;
    const double undesired = 1.0 - population_value;
    if (undesired <= 1e-12) {
        return std::numeric_limits<double>::infinity();
    }
    return (population_value / 2.0) / (undesired / cells);
}

inline double snr(const OutcomeHistogram &h) {
    if (h.total_events == 0) {
        throw insufficient_data_error("snr: empty histogram");
    }
    return snr_from_population(population(h).value, h.n_qubits);
}

/// Splits undesired events into the two noise classes: outcomes whose
/// photons all agree internally are characteristic of whole-photon (pair)
/// substitution and count toward double-pair emission; outcomes with any
/// intra-photon disagreement count toward element bit-flip errors. Both are
/// returned as fractions of all events.
struct NoiseAttribution {
    double double_pair_fraction = 0;
    double bitflip_fraction = 0;
};

inline NoiseAttribution attribute_noise(const OutcomeHistogram &h) {
    if (h.total_events == 0) {
        return {};
    }
    if (h.reg.empty()) {
        throw contract_error("attribute_noise: histogram lacks register metadata");
    }
    const size_t n = h.reg.size();
    const uint32_t ones = (1u << n) - 1;
    uint64_t consistent = 0;
    uint64_t disagree = 0;
    for (const auto &[k, c] : h.counts) {
        if (k == 0 || k == ones) {
            continue;
        }
        std::map<int, std::pair<bool, bool>> photon_seen;  // photon -> (saw0, saw1)
        for (size_t i = 0; i < n; ++i) {
            auto &[s0, s1] = photon_seen[h.reg[i].photon];
            (outcome_bit(k, i, n) ? s1 : s0) = true;
        }
        bool ok = true;
        for (const auto &[p, seen] : photon_seen) {
            if (seen.first && seen.second) {
                ok = false;
                break;
            }
        }
        (ok ? consistent : disagree) += c;
    }
    const double total = static_cast<double>(h.total_events);
    return {static_cast<double>(consistent) / total, static_cast<double>(disagree) / total};
}

/// Exact-mode attribution from the analytically classified outcome masses.
inline NoiseAttribution attribute_noise(const ZClassification &cls) {
    return {cls.consistent_undesired, cls.disagreeing};
}

/// Orders of magnitude gained by the multi-DoF encoding.
inline double rate_gain(double rate_hyper_hz, double rate_single_dof_hz) {
    if (rate_hyper_hz <= 0 || rate_single_dof_hz <= 0) {
        throw domain_error("rate_gain: rates must be positive");
    }
    return std::log10(rate_hyper_hz / rate_single_dof_hz);
}

/// Headline estimates of one full characterization run.
struct GhzReport {
    ValueWithError population;
    ValueWithError coherence;
    ValueWithError fidelity;
    double witness_sigma = 0;
    double snr = 0;
};

inline GhzReport make_report(const ValueWithError &pop, const ValueWithError &coh, double snr_value) {
    GhzReport r;
    r.population = pop;
    r.coherence = coh;
    r.fidelity = ghz_fidelity(pop, coh);
    r.witness_sigma = witness_sigma(r.fidelity.value, r.fidelity.stderr_);
    r.snr = snr_value;
    return r;
}

}  // namespace hyperghz
