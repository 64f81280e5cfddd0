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

#include <map>
#include <vector>

#include "hyperghz/sparse_state.hpp"

namespace hyperghz {

/// One pure branch of a mixed state, together with classical Pauli channels
/// that have been recorded but not yet expanded into explicit branches.
///
/// A deferred entry flip_prob[q] = p means qubit q suffers X with
/// probability p, independently per event; zflip_prob is the same for Z.
/// Consumers fold these in exactly (closed forms for populations and parity
/// expectations, per-event sampling otherwise), so deferral never changes
/// the represented mixed state.
struct Member {
    double weight = 1.0;  // mixture probability, conditioned on acceptance
    SparseState state;
    std::map<QubitAddress, double> flip_prob;
    std::map<QubitAddress, double> zflip_prob;

    double flip(QubitAddress q) const {
        auto it = flip_prob.find(q);
        return it == flip_prob.end() ? 0.0 : it->second;
    }
    double zflip(QubitAddress q) const {
        auto it = zflip_prob.find(q);
        return it == zflip_prob.end() ? 0.0 : it->second;
    }
};

/// Weighted collection of pure branches representing a mixed state.
struct Ensemble {
    std::vector<Member> members;

    double total_weight() const {
        double t = 0;
        for (const auto &m : members) {
            t += m.weight;
        }
        return t;
    }

    /// Rescales weights to sum to one and drops zero-weight branches.
    void normalize() {
        const double t = total_weight();
        if (t <= 0) {
            throw numeric_error("ensemble has no weight left");
        }
        std::vector<Member> kept;
        kept.reserve(members.size());
        for (auto &m : members) {
            m.weight /= t;
            if (m.weight > 0) {
                kept.push_back(std::move(m));
            }
        }
        members = std::move(kept);
    }

    const Register &reg() const {
        if (members.empty()) {
            throw config_error("empty ensemble has no register");
        }
        return members.front().state.reg();
    }

    static Ensemble pure(SparseState s) {
        Ensemble e;
        e.members.push_back(Member{1.0, std::move(s), {}, {}});
        return e;
    }
};

/// Combines two chance probabilities of applying the same Pauli twice.
inline double combine_flip_prob(double p1, double p2) {
    return p1 * (1 - p2) + p2 * (1 - p1);
}

}  // namespace hyperghz
