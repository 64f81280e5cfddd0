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

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hyperghz/address.hpp"
#include "hyperghz/linalg.hpp"

namespace hyperghz {

/// Amplitudes smaller than this are dropped after every transformation.
inline constexpr double kPruneTol = 1e-12;

/// Probabilities below this signal an impossible projection outcome.
inline constexpr double kImpossibleTol = 1e-15;

/// Sub-normalized pure state over a dynamic register of addressed qubits.
///
/// Amplitudes are stored as a sparse map from basis index to complex value.
/// Bit i of a basis index is the logic value of `reg()[i]`, with bit 0
/// meaning {H, U, R} and bit 1 meaning {V, D, L}. `weight()` accumulates the
/// success probability of every post-selection this branch has survived, so
/// weight * norm2 is the joint probability of reaching the branch.
class SparseState {
  public:
    using Amplitudes = std::map<uint32_t, c64>;

    SparseState() = default;

    /// Basis state |bits> over `reg`; all amplitudes concentrated on one key.
    static SparseState basis_state(Register reg, uint32_t bits) {
        if (reg.empty()) {
            throw config_error("basis_state: register must be non-empty");
        }
        check_distinct(reg);
        if (reg.size() < 32 && (bits >> reg.size()) != 0) {
            throw config_error("basis_state: bits do not fit the register width");
        }
        SparseState s;
        s.reg_ = std::move(reg);
        s.amps_[bits] = 1.0;
        return s;
    }

    const Register &reg() const { return reg_; }
    const Amplitudes &amplitudes() const { return amps_; }
    size_t num_qubits() const { return reg_.size(); }
    size_t term_count() const { return amps_.size(); }
    bool empty() const { return amps_.empty(); }

    double weight() const { return weight_; }
    void set_weight(double w) { weight_ = w; }

    bool has(QubitAddress a) const {
        return std::find(reg_.begin(), reg_.end(), a) != reg_.end();
    }

    int position(QubitAddress a) const {
        auto it = std::find(reg_.begin(), reg_.end(), a);
        if (it == reg_.end()) {
            throw address_error("qubit " + a.str() + " is not active in this register");
        }
        return static_cast<int>(it - reg_.begin());
    }

    double norm2() const {
        double n = 0;
        for (const auto &[k, a] : amps_) {
            n += std::norm(a);
        }
        return n;
    }

    c64 amplitude(uint32_t key) const {
        auto it = amps_.find(key);
        return it == amps_.end() ? c64(0) : it->second;
    }

    /// Applies a single-qubit unitary to `target`.
    void apply_unitary(QubitAddress target, const Mat2 &u) {
        if (!u.is_unitary()) {
            throw numeric_error("apply_unitary: 2x2 matrix is not unitary within 1e-9");
        }
        const uint32_t mask = 1u << position(target);
        Amplitudes out;
        std::set<uint32_t> seen;
        for (const auto &[k, a] : amps_) {
            const uint32_t base = k & ~mask;
            if (!seen.insert(base).second) {
                continue;
            }
            const c64 a0 = amplitude(base);
            const c64 a1 = amplitude(base | mask);
            stash(out, base, u(0, 0) * a0 + u(0, 1) * a1);
            stash(out, base | mask, u(1, 0) * a0 + u(1, 1) * a1);
        }
        amps_ = std::move(out);
    }

    /// Applies a two-qubit unitary; matrix index = (bit of `a` << 1) | bit of `b`.
    void apply_unitary(QubitAddress a, QubitAddress b, const Mat4 &u) {
        if (!u.is_unitary()) {
            throw numeric_error("apply_unitary: 4x4 matrix is not unitary within 1e-9");
        }
        if (a == b) {
            throw address_error("apply_unitary: two-qubit targets must be distinct");
        }
        const uint32_t ma = 1u << position(a);
        const uint32_t mb = 1u << position(b);
        Amplitudes out;
        std::set<uint32_t> seen;
        for (const auto &[k, amp] : amps_) {
            const uint32_t base = k & ~(ma | mb);
            if (!seen.insert(base).second) {
                continue;
            }
            c64 in[4];
            for (int idx = 0; idx < 4; ++idx) {
                in[idx] = amplitude(base | ((idx & 2) ? ma : 0) | ((idx & 1) ? mb : 0));
            }
            for (int r = 0; r < 4; ++r) {
                c64 v = 0;
                for (int c = 0; c < 4; ++c) {
                    v += u(r, c) * in[c];
                }
                stash(out, base | ((r & 2) ? ma : 0) | ((r & 1) ? mb : 0), v);
            }
        }
        amps_ = std::move(out);
    }

    /// CNOT implemented as an exact key remap.
    void apply_cnot(QubitAddress control, QubitAddress target) {
        const uint32_t mc = 1u << position(control);
        const uint32_t mt = 1u << position(target);
        Amplitudes out;
        for (const auto &[k, a] : amps_) {
            out[(k & mc) ? (k ^ mt) : k] += a;
        }
        amps_ = std::move(out);
    }

    void apply_x(QubitAddress target) {
        const uint32_t mt = 1u << position(target);
        Amplitudes out;
        for (const auto &[k, a] : amps_) {
            out[k ^ mt] = a;
        }
        amps_ = std::move(out);
    }

    void apply_z(QubitAddress target) {
        const uint32_t mt = 1u << position(target);
        for (auto &[k, a] : amps_) {
            if (k & mt) {
                a = -a;
            }
        }
    }

    /// Extends the register with `addr` holding the constant bit `value`.
    void add_qubit(QubitAddress addr, int value) {
        const uint32_t mask = added_mask(addr);
        if (value != 0) {
            remap_keys([&](uint32_t k) { return k | mask; });
        }
    }

    /// Extends the register with `addr` copying the logic value of `src` in
    /// every basis term (a CNOT onto a fresh target).
    void add_qubit_copy(QubitAddress addr, QubitAddress src) {
        const uint32_t ms = 1u << position(src);
        const uint32_t mask = added_mask(addr);
        remap_keys([&](uint32_t k) { return (k & ms) ? (k | mask) : k; });
    }

    struct Projection;

    /// Projects `addr` onto `outcome`. The returned probability is the kept
    /// fraction of the squared norm; a value below 1e-15 signals an
    /// impossible outcome and the returned state is an empty branch.
    Projection project(QubitAddress addr, int outcome) const;

    /// Removes a qubit whose logic value is identical across all basis terms.
    void remove_qubit(QubitAddress addr) {
        const int pos = position(addr);
        const uint32_t mask = 1u << pos;
        bool first = true;
        uint32_t shared = 0;
        for (const auto &[k, a] : amps_) {
            const uint32_t bit = k & mask;
            if (first) {
                shared = bit;
                first = false;
            } else if (bit != shared) {
                throw contract_error("remove_qubit: " + addr.str() + " is entangled with the rest of the register");
            }
        }
        const uint32_t low = mask - 1;
        Amplitudes out;
        for (const auto &[k, a] : amps_) {
            out[(k & low) | ((k >> 1) & ~low)] = a;
        }
        amps_ = std::move(out);
        reg_.erase(reg_.begin() + pos);
    }

    /// Inner product <reference|this>; registers must match exactly.
    c64 overlap_with(const SparseState &reference) const {
        if (reg_ != reference.reg_) {
            throw address_error("overlap: registers differ");
        }
        c64 v = 0;
        for (const auto &[k, a] : amps_) {
            auto it = reference.amps_.find(k);
            if (it != reference.amps_.end()) {
                v += std::conj(it->second) * a;
            }
        }
        return v;
    }

    /// Permutes the register into `new_reg` (same address set), re-keying
    /// every amplitude accordingly.
    void reorder(const Register &new_reg) {
        if (new_reg.size() != reg_.size()) {
            throw address_error("reorder: register size mismatch");
        }
        std::vector<int> dest(reg_.size());
        for (size_t i = 0; i < reg_.size(); ++i) {
            auto it = std::find(new_reg.begin(), new_reg.end(), reg_[i]);
            if (it == new_reg.end()) {
                throw address_error("reorder: address " + reg_[i].str() + " missing from target register");
            }
            dest[i] = static_cast<int>(it - new_reg.begin());
        }
        Amplitudes out;
        for (const auto &[k, a] : amps_) {
            uint32_t nk = 0;
            for (size_t i = 0; i < reg_.size(); ++i) {
                if (k & (1u << i)) {
                    nk |= 1u << dest[i];
                }
            }
            out[nk] = a;
        }
        amps_ = std::move(out);
        reg_ = new_reg;
    }

    void scale(c64 factor) {
        for (auto &[k, a] : amps_) {
            a *= factor;
        }
        prune();
    }

    void prune() {
        for (auto it = amps_.begin(); it != amps_.end();) {
            if (std::abs(it->second) < kPruneTol) {
                it = amps_.erase(it);
            } else {
                ++it;
            }
        }
    }

    /// Copy keeping only the basis terms selected by `keep`, with amplitudes
    /// multiplied by `scale`. Register and weight carry over unchanged.
    template <typename Pred>
    SparseState filtered(Pred &&keep, double scale = 1.0) const {
        SparseState out;
        out.reg_ = reg_;
        out.weight_ = weight_;
        for (const auto &[k, a] : amps_) {
            if (keep(k)) {
                stash(out.amps_, k, a * scale);
            }
        }
        return out;
    }

    /// Tensor product; registers must be disjoint. Weights multiply.
    friend SparseState tensor(const SparseState &a, const SparseState &b) {
        SparseState s;
        s.reg_ = a.reg_;
        s.reg_.insert(s.reg_.end(), b.reg_.begin(), b.reg_.end());
        check_distinct(s.reg_);
        const int shift = static_cast<int>(a.reg_.size());
        for (const auto &[kb, vb] : b.amps_) {
            for (const auto &[ka, va] : a.amps_) {
                s.amps_[ka | (kb << shift)] = va * vb;
            }
        }
        s.weight_ = a.weight_ * b.weight_;
        return s;
    }

  private:
    static void stash(Amplitudes &out, uint32_t key, c64 v) {
        if (std::abs(v) >= kPruneTol) {
            out[key] = v;
        }
    }

    uint32_t added_mask(QubitAddress addr) {
        if (has(addr)) {
            throw address_error("add_qubit: " + addr.str() + " is already active");
        }
        reg_.push_back(addr);
        return 1u << (reg_.size() - 1);
    }

    template <typename F>
    void remap_keys(F &&f) {
        Amplitudes out;
        for (const auto &[k, a] : amps_) {
            out[f(k)] += a;
        }
        amps_ = std::move(out);
    }

    Register reg_;
    Amplitudes amps_;
    double weight_ = 1.0;
};

struct SparseState::Projection {
    SparseState state;
    double probability = 0;
};

inline SparseState::Projection SparseState::project(QubitAddress addr, int outcome) const {
    const uint32_t mask = 1u << position(addr);
    Projection res;
    res.state.reg_ = reg_;
    double kept = 0;
    const double total = norm2();
    for (const auto &[k, a] : amps_) {
        const bool one = (k & mask) != 0;
        if (one == (outcome != 0)) {
            res.state.amps_[k] = a;
            kept += std::norm(a);
        }
    }
    res.probability = total > 0 ? kept / total : 0.0;
    if (res.probability < kImpossibleTol) {
        res.state.amps_.clear();
        res.state.weight_ = 0;
        res.probability = 0;
        return res;
    }
    const double scale = 1.0 / std::sqrt(kept);
    for (auto &[k, a] : res.state.amps_) {
        a *= scale;
    }
    res.state.weight_ = weight_ * res.probability;
    return res;
}

/// True when the two states are equal as rays: phases are aligned on the
/// largest-magnitude amplitude of each state, then compared term by term.
inline bool approx_equal_ray(const SparseState &a, const SparseState &b, double tol = 1e-9) {
    if (a.reg() != b.reg()) {
        return false;
    }
    auto dominant_phase = [](const SparseState &s) {
        double best = -1;
        c64 amp = 1;
        for (const auto &[k, v] : s.amplitudes()) {
            if (std::abs(v) > best) {
                best = std::abs(v);
                amp = v;
            }
        }
        return amp / std::abs(amp);
    };
    if (a.empty() || b.empty()) {
        return a.empty() == b.empty();
    }
    const c64 pa = dominant_phase(a);
    const c64 pb = dominant_phase(b);
    std::set<uint32_t> keys;
    for (const auto &[k, v] : a.amplitudes()) {
        keys.insert(k);
    }
    for (const auto &[k, v] : b.amplitudes()) {
        keys.insert(k);
    }
    for (uint32_t k : keys) {
        if (std::abs(a.amplitude(k) / pa - b.amplitude(k) / pb) > tol) {
            return false;
        }
    }
    return true;
}

}  // namespace hyperghz
