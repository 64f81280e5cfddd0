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
#include <string>
#include <vector>

#include "hyperghz/errors.hpp"

namespace hyperghz {

/// Degree of freedom carrying one qubit of a photon.
///
/// Logic values follow the fixed convention: bit 0 is {H, U, R} and bit 1 is
/// {V, D, L} for polarization, path, and orbital angular momentum
/// respectively. AUX addresses label short-lived internal interferometer arms
/// and never appear in a measured register.
enum class Dof : uint8_t { POL = 0, PATH = 1, OAM = 2, AUX = 3 };

inline const char *dof_name(Dof d) {
    switch (d) {
        case Dof::POL:
            return "pol";
        case Dof::PATH:
            return "path";
        case Dof::OAM:
            return "oam";
        default:
            return "aux";
    }
}

/// Identifies one qubit as (photon, degree of freedom).
struct QubitAddress {
    int photon = 1;  // 1-based, matching the usual labeling of photons 1..6
    Dof dof = Dof::POL;

    /// Canonical position 3*(photon-1) + rank(dof); a bijection onto 0..17
    /// when all six photons carry all three degrees of freedom.
    int flat_index() const { return 3 * (photon - 1) + static_cast<int>(dof); }

    friend bool operator==(const QubitAddress &a, const QubitAddress &b) {
        return a.photon == b.photon && a.dof == b.dof;
    }
    friend bool operator!=(const QubitAddress &a, const QubitAddress &b) { return !(a == b); }
    friend bool operator<(const QubitAddress &a, const QubitAddress &b) {
        if (a.photon != b.photon) {
            return a.photon < b.photon;
        }
        return static_cast<int>(a.dof) < static_cast<int>(b.dof);
    }

    std::string str() const { return dof_name(dof) + std::to_string(photon); }
};

inline QubitAddress pol(int photon) { return {photon, Dof::POL}; }
inline QubitAddress path(int photon) { return {photon, Dof::PATH}; }
inline QubitAddress oam(int photon) { return {photon, Dof::OAM}; }

using Register = std::vector<QubitAddress>;

/// Registers in canonical order: photons ascending, POL/PATH/OAM within each.
inline Register canonical_register(int n_photons) {
    Register reg;
    reg.reserve(3 * static_cast<size_t>(n_photons));
    for (int p = 1; p <= n_photons; ++p) {
        reg.push_back(pol(p));
        reg.push_back(path(p));
        reg.push_back(oam(p));
    }
    return reg;
}

inline void check_distinct(const Register &reg) {
    for (size_t i = 0; i < reg.size(); ++i) {
        for (size_t j = i + 1; j < reg.size(); ++j) {
            if (reg[i] == reg[j]) {
                throw config_error("duplicate qubit address " + reg[i].str() + " in register");
            }
        }
    }
}

}  // namespace hyperghz
