// SPDX-License-Identifier: Apache-2.0
//
// portcycle: port-cycled CSI acquisition and Type-II precoder simulation
// Copyright (C) 2026 The portcycle authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "portcycle/cli/commands.hpp"
#include "portcycle/errors.hpp"

namespace portcycle::cli {

namespace fs = std::filesystem;

namespace {

double parse_snr(const std::string& text) {
    if (text == "inf" || text == "+inf" || text == "noiseless") {
        return kNoiselessSnr;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw ConfigError("invalid SNR value '" + text + "'");
    }
    return v;
}

std::vector<double> parse_snr_list(const std::vector<std::string>& items) {
    std::vector<double> out;
    for (const std::string& s : items) {
        out.push_back(parse_snr(s));
    }
    return out;
}

void add_simulation_flags(CLI::App& cmd, SimulationConfig& sim, double& speed_kmh) {
    cmd.add_option("--nx", sim.antenna.n_x, "Horizontal elements per polarization")->capture_default_str();
    cmd.add_option("--ny", sim.antenna.n_y, "Vertical elements per polarization")->capture_default_str();
    cmd.add_option("--o1", sim.antenna.o1, "Horizontal oversampling")->capture_default_str();
    cmd.add_option("--o2", sim.antenna.o2, "Vertical oversampling")->capture_default_str();
    cmd.add_option("--rho-x", sim.rho_x, "Horizontal partition factor")->capture_default_str();
    cmd.add_option("--rho-y", sim.rho_y, "Vertical partition factor")->capture_default_str();
    cmd.add_option("--beams", sim.num_beams, "Beams per report (L)")->capture_default_str();
    cmd.add_option("--n-psk", sim.n_psk, "Phase alphabet size")->capture_default_str();
    cmd.add_option("--rx", sim.scenario.n_rx, "UE receive antennas")->capture_default_str();
    cmd.add_option("--subcarriers", sim.scenario.n_subcarriers, "Simulated tones")->capture_default_str();
    cmd.add_option("--clusters", sim.scenario.n_clusters, "Rays including LoS")->capture_default_str();
    cmd.add_option("--k-factor-db", sim.scenario.los_k_factor_db, "LoS Rician K-factor")->capture_default_str();
    cmd.add_option("--carrier-hz", sim.scenario.carrier_freq_hz, "Carrier frequency")->capture_default_str();
    cmd.add_option("--t-csi", sim.scenario.csi_period_s, "CSI-RS period in seconds")->capture_default_str();
    cmd.add_option("--speed-kmh", speed_kmh, "UE speed in km/h")->capture_default_str();
}

void write_output(const std::optional<fs::path>& path, const std::string& text, std::ostream& out) {
    if (path) {
        write_file_atomic(*path, text);
    } else {
        out << text;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Port-cycled CSI acquisition and Type-II precoder simulator", "portcycle"};
    app.require_subcommand(1);

    GenerateOptions gen;
    double gen_speed = gen.sim.scenario.ue_speed_mps * 3.6;
    std::vector<std::string> gen_snrs{"0"};
    auto* generate = app.add_subcommand("generate", "Generate a labeled port-cycled dataset");
    add_simulation_flags(*generate, gen.sim, gen_speed);
    generate->add_option("--samples", gen.samples, "Number of samples")->capture_default_str();
    generate->add_option("--snr-list", gen_snrs, "SNR values in dB (comma separated, 'inf' for noiseless)")
        ->delimiter(',');
    generate->add_option("--perm-policy", gen.perm_policy, "identity | all | random")->capture_default_str();
    generate->add_option("--seed", gen.seed, "Base seed")->capture_default_str();
    generate->add_option("--out", gen.out, "Output dataset directory")->required();
    generate->add_option("--threads", gen.threads, "Worker threads (PORTCYCLE_THREADS overrides)");

    EvaluateOptions eval;
    std::optional<fs::path> eval_out;
    auto* evaluate = app.add_subcommand("evaluate", "Per-SNR precoder metrics for baselines and predictions");
    evaluate->add_option("--dataset", eval.dataset, "Dataset directory")->required();
    evaluate->add_option("--predictions", eval.predictions, "Prediction file");
    evaluate->add_option("--out", eval_out, "CSV output path (stdout when omitted)");
    evaluate->add_option("--threads", eval.threads, "Worker threads (PORTCYCLE_THREADS overrides)");

    VariationOptions var;
    double var_speed = var.sim.scenario.ue_speed_mps * 3.6;
    std::vector<std::string> var_snrs{"-20", "-10", "0", "10", "20"};
    std::optional<fs::path> var_out;
    auto* variation = app.add_subcommand("variation", "Variation scores of per-cycle beam quantities versus SNR");
    add_simulation_flags(*variation, var.sim, var_speed);
    variation->add_option("--samples", var.samples, "Channel realizations")->capture_default_str();
    variation->add_option("--snr-list", var_snrs, "SNR values in dB")->delimiter(',');
    variation->add_option("--quantity", var.quantity, "beamset | dominant-beam")->capture_default_str();
    variation->add_option("--mode", var.mode, "index-diff | change-indicator")->capture_default_str();
    variation->add_flag("--static", var.static_channel, "Zero all Doppler shifts");
    variation->add_option("--seed", var.seed, "Base seed")->capture_default_str();
    variation->add_option("--out", var_out, "CSV output path (stdout when omitted)");
    variation->add_option("--threads", var.threads, "Worker threads (PORTCYCLE_THREADS overrides)");

    BenchOptions bench;
    std::optional<fs::path> bench_out;
    auto* benchmark = app.add_subcommand("bench", "Full-EVD baseline versus sub-panel pipeline timing");
    benchmark->add_option("--sizes", bench.sizes, "N_t values")->delimiter(',');
    benchmark->add_option("--rho", bench.rho, "Cycles per report")->capture_default_str();
    benchmark->add_option("--latent-dim", bench.latent_dim, "Latent size D")->capture_default_str();
    benchmark->add_option("--min-time", bench.min_seconds, "Seconds spent per measurement")->capture_default_str();
    benchmark->add_option("--seed", bench.seed, "Seed for the random inputs")->capture_default_str();
    benchmark->add_option("--out", bench_out, "CSV output path (stdout when omitted)");

    fs::path labels_dataset;
    fs::path labels_out;
    auto* labels = app.add_subcommand("export-labels", "Write ground-truth labels in the prediction file format");
    labels->add_option("--dataset", labels_dataset, "Dataset directory")->required();
    labels->add_option("--out", labels_out, "Prediction file path")->required();

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (generate->parsed()) {
            gen.sim.scenario.ue_speed_mps = gen_speed / 3.6;
            gen.snr_list = parse_snr_list(gen_snrs);
            const DatasetManifest m = cmd_generate(gen);
            out << (gen.out / kManifestFile).string() << "\n";
            (void)m;
        } else if (evaluate->parsed()) {
            write_output(eval_out, evaluation_csv(cmd_evaluate(eval, err)), out);
        } else if (variation->parsed()) {
            var.sim.scenario.ue_speed_mps = var_speed / 3.6;
            var.snr_list = parse_snr_list(var_snrs);
            write_output(var_out, variation_csv(cmd_variation(var)), out);
        } else if (benchmark->parsed()) {
            write_output(bench_out, bench_csv(cmd_bench(bench)), out);
        } else if (labels->parsed()) {
            cmd_export_labels(labels_dataset, labels_out);
            out << labels_out.string() << "\n";
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ValidationError& e) {
        err << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace portcycle::cli
