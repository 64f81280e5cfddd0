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

#include "hyperghz/pipeline.hpp"

namespace hyperghz {

/// Least-squares sinusoid A*cos(f*theta + phi) + c fitted to a fringe scan.
/// Amplitude is normalized to A >= 0 with phi in (-pi, pi].
struct FringeFit {
    double amplitude = 0;
    double frequency = 0;
    double phase = 0;
    double offset = 0;
    double rms_residual = 0;
    bool degenerate = false;  // amplitude indistinguishable from zero
};

namespace detail {

/// Largest amplitude the data can meaningfully support. Grids sampled at
/// the sinusoid's Nyquist rate (the 19-point grid with f = 18 is exactly
/// that) make the sin column nearly singular, and least squares would
/// otherwise absorb sampling noise into an arbitrarily large coefficient.
inline double amplitude_cap(const std::vector<FringePoint> &pts) {
    double lo = pts.front().expectation;
    double hi = lo;
    for (const auto &p : pts) {
        lo = std::min(lo, p.expectation);
        hi = std::max(hi, p.expectation);
    }
    return (hi - lo) + 1e-6;
}

/// For fixed frequency, solves the linear subproblem
/// y ~ a*cos(f t) + b*sin(f t) + c and returns the SSE.
///
/// When a quadrature column's mean square drops below 1% the grid cannot
/// resolve that component at this frequency (the 19-point grid samples an
/// f = 18 sinusoid exactly at its Nyquist rate, where sin(f t) vanishes on
/// every point); the coefficient is then pinned to zero instead of letting
/// least squares amplify sampling noise through a near-singular design.
inline double linear_sinusoid_sse(const std::vector<FringePoint> &pts, double f, double &a, double &b,
                                  double &c) {
    const size_t n = pts.size();
    double cos2 = 0, sin2 = 0;
    for (const auto &p : pts) {
        cos2 += std::cos(f * p.theta) * std::cos(f * p.theta);
        sin2 += std::sin(f * p.theta) * std::sin(f * p.theta);
    }
    const bool use_cos = cos2 / static_cast<double>(n) >= 0.01;
    const bool use_sin = sin2 / static_cast<double>(n) >= 0.01;

    // Normal equations over the active columns (constant term always active).
    int cols[3];
    int ncols = 0;
    if (use_cos) {
        cols[ncols++] = 0;
    }
    if (use_sin) {
        cols[ncols++] = 1;
    }
    cols[ncols++] = 2;

    double m[3][4] = {};
    for (const auto &p : pts) {
        const double basis[3] = {std::cos(f * p.theta), std::sin(f * p.theta), 1.0};
        for (int i = 0; i < ncols; ++i) {
            for (int j = 0; j < ncols; ++j) {
                m[i][j] += basis[cols[i]] * basis[cols[j]];
            }
            m[i][3] += basis[cols[i]] * p.expectation;
        }
    }
    for (int col = 0; col < ncols; ++col) {
        int piv = col;
        for (int r = col + 1; r < ncols; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) {
                piv = r;
            }
        }
        std::swap(m[col], m[piv]);
        if (std::abs(m[col][col]) < 1e-12) {
            for (int j = col; j < 4; ++j) {
                m[col][j] = 0;
            }
            m[col][col] = 1;
            continue;
        }
        for (int r = 0; r < ncols; ++r) {
            if (r == col) {
                continue;
            }
            const double factor = m[r][col] / m[col][col];
            for (int j = col; j < 4; ++j) {
                m[r][j] -= factor * m[col][j];
            }
        }
    }
    double sol[3] = {0, 0, 0};
    for (int i = 0; i < ncols; ++i) {
        sol[cols[i]] = m[i][3] / m[i][i];
    }
    a = sol[0];
    b = sol[1];
    c = sol[2];
    if (std::hypot(a, b) > amplitude_cap(pts)) {
        return std::numeric_limits<double>::infinity();
    }
    double sse = 0;
    for (const auto &p : pts) {
        const double fit = a * std::cos(f * p.theta) + b * std::sin(f * p.theta) + c;
        sse += (p.expectation - fit) * (p.expectation - fit);
    }
    return sse;
}

}  // namespace detail

/// Fits the fringe series, initializing the frequency at the qubit count and
/// refining it freely, so frequency recovery is itself a test output.
inline FringeFit fringe_fit(const FringeSeries &series) {
    const auto &pts = series.points;
    if (pts.size() < 5) {
        throw fit_error("fringe_fit: at least 5 points required, got " + std::to_string(pts.size()));
    }
    const double f0 = std::max(1, series.n_qubits);
    const double f_lo = std::max(0.2, 0.6 * f0);
    const double f_hi = 1.4 * f0 + 0.5;

    double a = 0, b = 0, c = 0;
    double scan_f = f0;
    double scan_sse = std::numeric_limits<double>::infinity();
    const int steps = 800;
    for (int i = 0; i <= steps; ++i) {
        const double f = f_lo + (f_hi - f_lo) * i / steps;
        double ta, tb, tc;
        const double sse = detail::linear_sinusoid_sse(pts, f, ta, tb, tc);
        if (sse < scan_sse) {
            scan_sse = sse;
            scan_f = f;
        }
    }
    double best_f = scan_f;
    double best_sse = scan_sse;
    // Golden-section refinement around the best grid cell, falling back to
    // the scan optimum if refinement wanders into a rejected region.
    double lo = std::max(f_lo, scan_f - 2 * (f_hi - f_lo) / steps);
    double hi = std::min(f_hi, scan_f + 2 * (f_hi - f_lo) / steps);
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double ta, tb, tc;
    double s1 = detail::linear_sinusoid_sse(pts, x1, ta, tb, tc);
    double s2 = detail::linear_sinusoid_sse(pts, x2, ta, tb, tc);
    for (int it = 0; it < 120 && (hi - lo) > 1e-12; ++it) {
        if (s1 < s2) {
            hi = x2;
            x2 = x1;
            s2 = s1;
            x1 = hi - gr * (hi - lo);
            s1 = detail::linear_sinusoid_sse(pts, x1, ta, tb, tc);
        } else {
            lo = x1;
            x1 = x2;
            s1 = s2;
            x2 = lo + gr * (hi - lo);
            s2 = detail::linear_sinusoid_sse(pts, x2, ta, tb, tc);
        }
    }
    const double refined_f = (lo + hi) / 2;
    const double refined_sse = detail::linear_sinusoid_sse(pts, refined_f, a, b, c);
    if (refined_sse <= scan_sse) {
        best_f = refined_f;
        best_sse = refined_sse;
    } else {
        best_f = scan_f;
        best_sse = detail::linear_sinusoid_sse(pts, best_f, a, b, c);
    }

    FringeFit fit;
    fit.frequency = best_f;
    fit.amplitude = std::hypot(a, b);
    fit.phase = (fit.amplitude > 0) ? std::atan2(-b, a) : 0.0;
    fit.offset = c;
    fit.rms_residual = std::sqrt(best_sse / static_cast<double>(pts.size()));
    fit.degenerate = fit.amplitude < 1e-7;
    if (!std::isfinite(fit.amplitude) || !std::isfinite(best_sse)) {
        throw fit_error("fringe_fit: diverged (non-finite parameters)");
    }
    return fit;
}

}  // namespace hyperghz
