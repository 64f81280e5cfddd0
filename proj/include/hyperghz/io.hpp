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

/// Serialization of configs, fringe scans, computational-basis matrices, and
/// reports. CSV columns and JSON keys are documented in the README; doubles
/// round-trip at full precision, and infinities serialize as the string
/// "infinity" (JSON has no inf literal).

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hyperghz/analysis.hpp"
#include "hyperghz/fit.hpp"

namespace hyperghz {

inline constexpr int kSchemaVersion = 1;

enum class RunMode { EXACT, SAMPLED };

/// Everything one simulation run needs; mirrors the JSON config file.
struct RunConfig {
    NoiseParams noise;
    RunMode mode = RunMode::EXACT;
    double rate_hz = 0.2;
    double duration_s = 7200;
    std::vector<double> theta_grid = default_theta_grid();
    std::string output_dir = ".";
    uint64_t seed = 1;

    void validate() const {
        noise.validate();
        if (mode == RunMode::SAMPLED && (rate_hz <= 0 || duration_s <= 0)) {
            throw config_error("sampled mode requires rate_hz > 0 and duration_s > 0");
        }
    }
};

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Six significant digits, for human-facing summaries only.
inline std::string format_short(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline nlohmann::json finite_or_string(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "infinity" : "-infinity";
    }
    return v;
}

inline double from_finite_or_string(const nlohmann::json &j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "infinity") {
            return std::numeric_limits<double>::infinity();
        }
        if (s == "-infinity") {
            return -std::numeric_limits<double>::infinity();
        }
        throw config_error("unexpected string in numeric field: " + s);
    }
    return j.get<double>();
}

// ---------------------------------------------------------------------------
// NoiseParams / RunConfig JSON
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const NoiseParams &p) {
    return nlohmann::json{
        {"pair_fidelity", p.pair_fidelity},
        {"double_pair_fraction", p.double_pair_fraction},
        {"bitflip_prob", p.bitflip_prob},
        {"spatial_visibility", p.spatial_visibility},
        {"oam_visibility", p.oam_visibility},
        {"converter_efficiency", p.converter_efficiency},
        {"seed", p.seed},
    };
}

inline NoiseParams noise_from_json(const nlohmann::json &j) {
    NoiseParams p;
    p.pair_fidelity = j.value("pair_fidelity", p.pair_fidelity);
    p.double_pair_fraction = j.value("double_pair_fraction", p.double_pair_fraction);
    p.bitflip_prob = j.value("bitflip_prob", p.bitflip_prob);
    p.spatial_visibility = j.value("spatial_visibility", p.spatial_visibility);
    p.oam_visibility = j.value("oam_visibility", p.oam_visibility);
    p.converter_efficiency = j.value("converter_efficiency", p.converter_efficiency);
    p.seed = j.value("seed", p.seed);
    p.validate();
    return p;
}

inline nlohmann::json to_json(const RunConfig &c) {
    return nlohmann::json{
        {"schema_version", kSchemaVersion},
        {"mode", c.mode == RunMode::EXACT ? "exact" : "sampled"},
        {"rate_hz", c.rate_hz},
        {"duration_s", c.duration_s},
        {"theta_grid", c.theta_grid},
        {"output_dir", c.output_dir},
        {"seed", c.seed},
        {"noise", to_json(c.noise)},
    };
}

inline RunConfig config_from_json(const nlohmann::json &j) {
    RunConfig c;
    if (j.contains("schema_version") && j["schema_version"].get<int>() != kSchemaVersion) {
        throw config_error("unsupported config schema_version");
    }
    const std::string mode = j.value("mode", std::string("exact"));
    if (mode == "exact") {
        c.mode = RunMode::EXACT;
    } else if (mode == "sampled") {
        c.mode = RunMode::SAMPLED;
    } else {
        throw config_error("mode must be \"exact\" or \"sampled\"");
    }
    c.rate_hz = j.value("rate_hz", c.rate_hz);
    c.duration_s = j.value("duration_s", c.duration_s);
    c.output_dir = j.value("output_dir", c.output_dir);
    c.seed = j.value("seed", c.seed);
    if (j.contains("theta_grid")) {
        c.theta_grid = j["theta_grid"].get<std::vector<double>>();
    }
    if (j.contains("noise")) {
        c.noise = noise_from_json(j["noise"]);
    }
    c.validate();
    return c;
}

inline RunConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw config_error("cannot open config file " + path);
    }
    nlohmann::json j;
    in >> j;
    return config_from_json(j);
}

// ---------------------------------------------------------------------------
// Fringe CSV: theta,expectation,stderr
// ---------------------------------------------------------------------------

inline std::string fringes_to_csv(const FringeSeries &s) {
    std::ostringstream out;
    out << "theta,expectation,stderr\n";
    for (const auto &p : s.points) {
        out << format_double(p.theta) << ',' << format_double(p.expectation) << ','
            << format_double(p.stderr_) << '\n';
    }
    return out.str();
}

inline FringeSeries fringes_from_csv(const std::string &csv, int n_qubits) {
    FringeSeries s;
    s.n_qubits = n_qubits;
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != "theta,expectation,stderr") {
        throw config_error("fringe CSV: bad header");
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        FringePoint p;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &p.theta, &p.expectation, &p.stderr_) != 3) {
            throw config_error("fringe CSV: bad row: " + line);
        }
        s.points.push_back(p);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Computational-basis matrix CSV: row,col,count
//
// For an 18-qubit outcome the row is the integer formed by the first nine
// register bits (photons 1-3, most significant first) and the column by the
// last nine (photons 4-6), giving the 512 x 512 layout. Only nonzero cells
// are written. In exact mode "count" holds the outcome probability.
// ---------------------------------------------------------------------------

template <typename CountT>
inline std::string zbasis_matrix_to_csv(const std::map<uint32_t, CountT> &cells, size_t n_qubits) {
    if (n_qubits % 2 != 0) {
        throw config_error("matrix export needs an even qubit count");
    }
    const size_t half = n_qubits / 2;
    const uint32_t col_mask = (1u << half) - 1;
    std::ostringstream out;
    out << "row,col,count\n";
    for (const auto &[k, c] : cells) {
        out << (k >> half) << ',' << (k & col_mask) << ',';
        if constexpr (std::is_floating_point_v<CountT>) {
            out << format_double(c);
        } else {
            out << c;
        }
        out << '\n';
    }
    return out.str();
}

inline std::map<uint32_t, double> zbasis_matrix_from_csv(const std::string &csv, size_t n_qubits) {
    const size_t half = n_qubits / 2;
    std::map<uint32_t, double> cells;
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != "row,col,count") {
        throw config_error("matrix CSV: bad header");
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        unsigned long row = 0, col = 0;
        double count = 0;
        if (std::sscanf(line.c_str(), "%lu,%lu,%lf", &row, &col, &count) != 3) {
            throw config_error("matrix CSV: bad row: " + line);
        }
        cells[(static_cast<uint32_t>(row) << half) | static_cast<uint32_t>(col)] = count;
    }
    return cells;
}

/// Histogram CSV: outcome_bits,count with the outcome written as a bitstring
/// in register order (first listed qubit leftmost).
inline std::string histogram_to_csv(const OutcomeHistogram &h) {
    std::ostringstream out;
    out << "outcome_bits,count\n";
    for (const auto &[k, c] : h.counts) {
        std::string bits(h.n_qubits, '0');
        for (size_t i = 0; i < h.n_qubits; ++i) {
            bits[i] = outcome_bit(k, i, h.n_qubits) ? '1' : '0';
        }
        out << bits << ',' << c << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Report JSON
// ---------------------------------------------------------------------------

inline nlohmann::json report_to_json(const GhzReport &r, const NoiseParams &noise) {
    return nlohmann::json{
        {"schema_version", kSchemaVersion},
        {"population", r.population.value},
        {"population_err", r.population.stderr_},
        {"coherence", r.coherence.value},
        {"coherence_err", r.coherence.stderr_},
        {"fidelity", r.fidelity.value},
        {"fidelity_err", r.fidelity.stderr_},
        {"witness_sigma", finite_or_string(r.witness_sigma)},
        {"snr", finite_or_string(r.snr)},
        {"noise_params", to_json(noise)},
    };
}

inline GhzReport report_from_json(const nlohmann::json &j) {
    GhzReport r;
    r.population = {j.at("population").get<double>(), j.at("population_err").get<double>()};
    r.coherence = {j.at("coherence").get<double>(), j.at("coherence_err").get<double>()};
    r.fidelity = {j.at("fidelity").get<double>(), j.at("fidelity_err").get<double>()};
    r.witness_sigma = from_finite_or_string(j.at("witness_sigma"));
    r.snr = from_finite_or_string(j.at("snr"));
    return r;
}

// ---------------------------------------------------------------------------
// Full characterization run (shared by the CLI and the acceptance suite)
// ---------------------------------------------------------------------------

/// Runs both bases end to end on the 18-qubit pipeline: computational-basis
/// population and SNR plus the 18 coherence settings. Exact mode evaluates
/// analytically (zero errors, infinity sentinels); sampled mode draws one
/// Poissonian acquisition per setting with per-setting derived seeds.
inline GhzReport run_full_report(const RunConfig &cfg) {
    cfg.validate();
    Ensemble ens = build_hyper_ghz18(cfg.noise);
    ValueWithError pop;
    double snr_value = 0;
    std::vector<FringePoint> coherence_pts;

    if (cfg.mode == RunMode::EXACT) {
        pop = {classify_z_mass(ens).population(), 0.0};
        snr_value = snr_from_population(pop.value, ens.reg().size());
        for (int k = 0; k < 18; ++k) {
            const double theta = k * M_PI / 18.0;
            coherence_pts.push_back(FringePoint{theta, exact_parity_expectation(ens, theta), 0.0});
        }
    } else {
        const double keep = converter_keep_fraction(cfg.noise, ens.reg());
        const double expected = cfg.rate_hz * cfg.duration_s * keep;
        OutcomeHistogram zh = sample_events(ens, MeasurementSetting::computational(ens.reg()),
                                            expected, cfg.duration_s, derive_seed(cfg.seed, 2000));
        if (zh.total_events == 0) {
            throw insufficient_data_error("report: computational-basis acquisition saw no events");
        }
        pop = population(zh);
        snr_value = snr(zh);
        for (int k = 0; k < 18; ++k) {
            const double theta = k * M_PI / 18.0;
            OutcomeHistogram h = sample_events(
                ens, MeasurementSetting::superposition(ens.reg(), theta), expected, cfg.duration_s,
                derive_seed(cfg.seed, 3000 + static_cast<uint64_t>(k)));
            if (h.total_events == 0) {
                throw insufficient_data_error("report: superposition acquisition saw no events");
            }
            const ValueWithError e = expectation_from_histogram(h);
            coherence_pts.push_back(FringePoint{theta, e.value, e.stderr_});
        }
    }
    return make_report(pop, coherence18(coherence_pts), snr_value);
}

inline void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw config_error("cannot write " + path);
    }
    out << content;
}

inline std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw config_error("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace hyperghz
