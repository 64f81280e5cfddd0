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

#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "hyperghz/hyperghz.hpp"

namespace fs = std::filesystem;
using namespace hyperghz;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::optional<uint64_t> seed;
    bool force_exact = false;
    bool force_sampled = false;
};

RunConfig resolve_config(const CliOptions &opt) {
    RunConfig cfg;
    if (!opt.config_path.empty()) {
        cfg = load_config(opt.config_path);
    }
    if (opt.seed) {
        cfg.seed = *opt.seed;
        cfg.noise.seed = *opt.seed;
    }
    if (opt.force_exact) {
        cfg.mode = RunMode::EXACT;
    }
    if (opt.force_sampled) {
        cfg.mode = RunMode::SAMPLED;
    }
    if (!opt.out_dir.empty()) {
        cfg.output_dir = opt.out_dir;
    }
    cfg.validate();
    fs::create_directories(cfg.output_dir);
    return cfg;
}

std::string out_path(const RunConfig &cfg, const std::string &name) {
    return (fs::path(cfg.output_dir) / name).string();
}

std::optional<SamplingPlan> sampling_plan(const RunConfig &cfg, const Register &reg) {
    if (cfg.mode == RunMode::EXACT) {
        return std::nullopt;
    }
    SamplingPlan plan;
    plan.rate_hz = cfg.rate_hz;
    plan.duration_s = cfg.duration_s;
    plan.event_keep_fraction = converter_keep_fraction(cfg.noise, reg);
    plan.seed = cfg.seed;
    return plan;
}

int cmd_fringes(const RunConfig &cfg, int n_qubits) {
    Ensemble ens = build_fringe_ensemble(n_qubits, cfg.noise);
    FringeSeries series = fringe_scan(ens, cfg.theta_grid, sampling_plan(cfg, ens.reg()));
    const std::string csv_path = out_path(cfg, "fringes_N" + std::to_string(n_qubits) + ".csv");
    write_text_file(csv_path, fringes_to_csv(series));

    FringeFit fit = fringe_fit(series);
    nlohmann::json summary{
        {"schema_version", kSchemaVersion},
        {"n_qubits", n_qubits},
        {"amplitude", fit.amplitude},
        {"frequency", fit.frequency},
        {"frequency_ratio", fit.frequency / n_qubits},
        {"phase", fit.phase},
        {"offset", fit.offset},
        {"rms_residual", fit.rms_residual},
        {"degenerate", fit.degenerate},
    };
    const std::string fit_path = out_path(cfg, "fringes_N" + std::to_string(n_qubits) + "_fit.json");
    write_text_file(fit_path, summary.dump(2) + "\n");
    std::cout << "fringes N=" << n_qubits << ": amplitude " << format_short(fit.amplitude)
              << ", frequency " << format_short(fit.frequency) << " (ratio "
              << format_short(fit.frequency / n_qubits) << "), wrote " << csv_path << "\n";
    return 0;
}

int cmd_zbasis(const RunConfig &cfg) {
    Ensemble ens = build_hyper_ghz18(cfg.noise);
    const MeasurementSetting z = MeasurementSetting::computational(ens.reg());
    nlohmann::json summary{{"schema_version", kSchemaVersion}, {"n_qubits", 18}};
    const std::string matrix_path = out_path(cfg, "zbasis_matrix.csv");

    if (cfg.mode == RunMode::EXACT) {
        SparseDistribution dist = outcome_distribution(ens, z);
        std::map<uint32_t, double> cells;
        for (const auto &[k, p] : dist) {
            if (p >= 1e-12) {
                cells[k] = p;
            }
        }
        write_text_file(matrix_path, zbasis_matrix_to_csv(cells, 18));
        const ZClassification cls = classify_z_mass(ens);
        summary["mode"] = "exact";
        summary["population"] = cls.population();
        summary["population_err"] = 0.0;
        summary["snr"] = finite_or_string(snr_from_population(cls.population(), 18));
    } else {
        const double keep = converter_keep_fraction(cfg.noise, ens.reg());
        OutcomeHistogram h = sample_events(ens, z, cfg.rate_hz * cfg.duration_s * keep,
                                           cfg.duration_s, derive_seed(cfg.seed, 1000));
        write_text_file(matrix_path, zbasis_matrix_to_csv(h.counts, 18));
        write_text_file(out_path(cfg, "zbasis_histogram.csv"), histogram_to_csv(h));
        summary["mode"] = "sampled";
        summary["total_events"] = h.total_events;
        summary["duration_s"] = h.duration_s;
        if (h.total_events > 0) {
            const ValueWithError pop = population(h);
            summary["population"] = pop.value;
            summary["population_err"] = pop.stderr_;
            summary["snr"] = finite_or_string(snr(h));
        } else {
            summary["population"] = nullptr;
            summary["population_err"] = nullptr;
            summary["snr"] = nullptr;
        }
    }
    write_text_file(out_path(cfg, "zbasis_summary.json"), summary.dump(2) + "\n");
    std::cout << "zbasis: wrote " << matrix_path << "\n";
    if (!summary["population"].is_null()) {
        std::cout << "  population " << format_short(summary["population"].get<double>()) << "\n";
    }
    return 0;
}

int cmd_report(const RunConfig &cfg) {
    const GhzReport rep = run_full_report(cfg);
    const std::string path = out_path(cfg, "report.json");
    write_text_file(path, report_to_json(rep, cfg.noise).dump(2) + "\n");
    std::cout << "population " << format_short(rep.population.value) << " +- "
              << format_short(rep.population.stderr_) << "\n"
              << "coherence  " << format_short(rep.coherence.value) << " +- "
              << format_short(rep.coherence.stderr_) << "\n"
              << "fidelity   " << format_short(rep.fidelity.value) << " +- "
              << format_short(rep.fidelity.stderr_) << "\n"
              << "witness    " << format_short(rep.witness_sigma) << " sigma\n"
              << "snr        " << format_short(rep.snr) << "\n"
              << "wrote " << path << "\n";
    return 0;
}

int cmd_calibrate(const RunConfig &cfg, double target_population, double target_coherence) {
    try {
        const NoiseParams fitted = calibrate_noise(target_population, target_coherence, cfg.noise);
        const std::string path = out_path(cfg, "calibrated_noise.json");
        write_text_file(path, to_json(fitted).dump(2) + "\n");
        std::cout << "calibrated double_pair_fraction " << format_short(fitted.double_pair_fraction)
                  << ", bitflip_prob " << format_short(fitted.bitflip_prob) << "\nwrote " << path
                  << "\n";
        return 0;
    } catch (const calibration_error &e) {
        std::cerr << "calibration failed: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulator and estimator suite for a six-photon, three-DoF 18-qubit GHZ experiment"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    CliOptions opt;
    app.add_option("--config", opt.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--seed", opt.seed, "overrides the run seed");
    app.add_option("--out", opt.out_dir, "output directory");
    auto *exact_flag = app.add_flag("--exact", opt.force_exact, "analytic probabilities, no sampling");
    app.add_flag("--sampled", opt.force_sampled, "Poissonian event sampling")->excludes(exact_flag);

    int fringe_n = 18;
    auto *fringes = app.add_subcommand("fringes", "parity fringe scan and sinusoid fit");
    fringes->add_option("--n", fringe_n, "qubit count")->check(CLI::IsMember({1, 3, 12, 18}));

    auto *zbasis = app.add_subcommand("zbasis", "computational-basis histogram and 512x512 matrix");
    auto *report = app.add_subcommand("report", "population, coherence, fidelity, witness, SNR");

    double target_pop = 0.814;
    double target_coh = 0.602;
    auto *calibrate = app.add_subcommand("calibrate", "fit noise parameters to target estimates");
    calibrate->add_option("--population", target_pop, "target population")->required();
    calibrate->add_option("--coherence", target_coh, "target coherence")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = resolve_config(opt);
        if (fringes->parsed()) {
            return cmd_fringes(cfg, fringe_n);
        }
        if (zbasis->parsed()) {
            return cmd_zbasis(cfg);
        }
        if (report->parsed()) {
            return cmd_report(cfg);
        }
        if (calibrate->parsed()) {
            return cmd_calibrate(cfg, target_pop, target_coh);
        }
    } catch (const error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
