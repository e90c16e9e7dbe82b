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

#include "portcycle/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

#include "portcycle/errors.hpp"
#include "portcycle/cli/parallel.hpp"
#include "portcycle/port_cycling.hpp"
#include "portcycle/seeding.hpp"
#include "portcycle/typeii_codebook.hpp"

namespace portcycle::cli {

namespace fs = std::filesystem;

namespace {

// Samples generated per batch before they are flushed to disk in order.
constexpr std::size_t kBatchSize = 64;

std::string format_number(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void check_snr_list(const std::vector<double>& snrs) {
    if (snrs.empty()) {
        throw ConfigError("--snr-list must contain at least one value");
    }
    for (const double s : snrs) {
        if (std::isnan(s) || (std::isinf(s) && s < 0)) {
            throw ConfigError("SNR values must be finite or inf");
        }
    }
}

double label_time(const SimulationConfig& sim) {
    return (sim.rho_x * sim.rho_y - 1) * sim.scenario.csi_period_s;
}

}  // namespace

void SimulationConfig::validate() const {
    antenna.validate();
    scenario.validate();
    (void)partition(antenna, rho_x, rho_y);
    if (num_beams < 2 || num_beams > 4) {
        throw ConfigError("--beams must be 2, 3 or 4");
    }
    if (num_beams > antenna.n_elements()) {
        throw ConfigError("--beams exceeds the number of beams per beamset");
    }
    if (n_psk != 4 && n_psk != 8) {
        throw ConfigError("--n-psk must be 4 or 8");
    }
}

std::vector<int> sounding_order(const std::string& policy, int rho, std::size_t index, std::size_t n_snr,
                                std::uint64_t sample_seed) {
    std::vector<int> perm(static_cast<std::size_t>(rho));
    std::iota(perm.begin(), perm.end(), 0);
    if (policy == "identity") {
        return perm;
    }
    if (policy == "all") {
        std::size_t count = 1;
        for (int i = 2; i <= rho; ++i) {
            count *= static_cast<std::size_t>(i);
        }
        const std::size_t which = (index / std::max<std::size_t>(1, n_snr)) % count;
        for (std::size_t i = 0; i < which; ++i) {
            std::next_permutation(perm.begin(), perm.end());
        }
        return perm;
    }
    if (policy == "random") {
        std::mt19937_64 rng(derive_seed(sample_seed, Stream::kPermutation));
        for (std::size_t i = perm.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(rng() % i);
            std::swap(perm[i - 1], perm[j]);
        }
        return perm;
    }
    throw ConfigError("--perm-policy must be identity, all or random");
}

DatasetManifest cmd_generate(const GenerateOptions& opts) {
    opts.sim.validate();
    check_snr_list(opts.snr_list);
    if (opts.samples == 0) {
        throw ConfigError("--samples must be >= 1");
    }
    if (opts.out.empty()) {
        throw ConfigError("--out is required");
    }
    (void)sounding_order(opts.perm_policy, 1, 0, 1, 0);

    const SimulationConfig& sim = opts.sim;
    const SubPanelPartition part = partition(sim.antenna, sim.rho_x, sim.rho_y);
    const BeamspaceGrid grid(sim.antenna);
    const QuantizationTables tables = QuantizationTables::standard(sim.n_psk);
    const double t_label = label_time(sim);

    DatasetHeader header;
    header.antenna = sim.antenna;
    header.scenario = sim.scenario;
    header.rho_x = sim.rho_x;
    header.rho_y = sim.rho_y;
    header.num_beams = sim.num_beams;
    header.n_psk = sim.n_psk;
    header.snr_list = opts.snr_list;
    header.base_seed = opts.seed;
    header.perm_policy = opts.perm_policy;
    header.label_time_offset_s = t_label;
    header.split_seed = derive_seed(opts.seed, 0xA11CE);

    DatasetWriter writer(opts.out, header);
    const int workers = worker_count(opts.threads);
    for (std::size_t start = 0; start < opts.samples; start += kBatchSize) {
        const std::size_t count = std::min(kBatchSize, opts.samples - start);
        std::vector<DatasetSample> batch(count);
        parallel_for(count, workers, [&](std::size_t j) {
            const std::size_t s = start + j;
            const std::uint64_t sample_seed = derive_seed(opts.seed, s);
            const ChannelRealization real =
                generate_channel(sim.scenario, sim.antenna, derive_seed(sample_seed, Stream::kChannel));
            const double snr = opts.snr_list[s % opts.snr_list.size()];
            const std::vector<int> perm =
                sounding_order(opts.perm_policy, part.rho(), s, opts.snr_list.size(), sample_seed);
            const CycleSchedule sched = make_schedule(part, 0.0, sim.scenario.csi_period_s, perm);

            DatasetSample& out = batch[j];
            out.cycles = sound_cycle(real, sched, part, snr, derive_seed(sample_seed, Stream::kCycleNoise));
            out.label = ground_truth_report(wideband_covariance(snapshot_at(real, t_label)), grid, tables,
                                            sim.num_beams);
            out.snr_db = snr;
            out.seed = sample_seed;
        });
        for (const DatasetSample& s : batch) {
            writer.append(s);
        }
    }
    return writer.commit();
}

std::vector<EvaluationRow> cmd_evaluate(const EvaluateOptions& opts, std::ostream& warnings) {
    if (opts.dataset.empty()) {
        throw ConfigError("--dataset is required");
    }
    const DatasetManifest manifest = read_manifest(opts.dataset);
    const DatasetHeader& h = manifest.header;
    SimulationConfig sim{h.antenna, h.scenario, h.rho_x, h.rho_y, h.num_beams, h.n_psk};
    sim.validate();

    std::optional<PredictionImport> preds;
    if (opts.predictions) {
        preds = import_predictions(*opts.predictions, manifest);
        if (preds->partial()) {
            warnings << "warning: " << preds->missing << " of " << manifest.samples.size()
                     << " samples have no prediction; they are skipped for the predicted source\n";
        }
    }

    const std::vector<TypeIIReport> labels = read_labels(opts.dataset, manifest);
    const SubPanelPartition part = partition(sim.antenna, sim.rho_x, sim.rho_y);
    const BeamspaceGrid grid(sim.antenna);
    const QuantizationTables tables = QuantizationTables::standard(sim.n_psk);

    const std::size_t n = manifest.samples.size();
    std::vector<EvalRecord> full(n), cycled(n), predicted(n);
    std::vector<bool> has_prediction(n, false);

    parallel_for(n, worker_count(opts.threads), [&](std::size_t i) {
        const SampleRecord& rec = manifest.samples[i];
        const TypeIIReport& truth = labels[i];
        validate_report(truth, grid, tables);

        const ChannelRealization real =
            generate_channel(sim.scenario, sim.antenna, derive_seed(rec.seed, Stream::kChannel));
        const double t0 = rec.times_s.empty() ? 0.0 : rec.times_s.front();
        const ChannelSnapshot clean = snapshot_at(real, t0 + h.label_time_offset_s);
        const CMatrix r_true = wideband_covariance(clean);
        const CVector v_eig = dominant_eigenvector(r_true);

        const auto score = [&](const TypeIIReport& report) {
            const CVector w = assemble_precoder(report, grid, tables);
            EvalRecord e;
            e.snr_db = rec.snr_db;
            e.sgcs = sgcs(v_eig, w);
            e.bf_gain = bf_gain(w, r_true, v_eig);
            e.accuracy = report_accuracy(report, truth);
            return e;
        };

        const ChannelSnapshot noisy = add_measurement_noise(clean, rec.snr_db, derive_seed(rec.seed, Stream::kEvalNoise));
        full[i] = score(ground_truth_report(wideband_covariance(noisy), grid, tables, sim.num_beams));

        const std::vector<CycleMeasurement> cycles = read_sample_cycles(opts.dataset, manifest, i);
        const ChannelSnapshot stale = reassemble(cycles, part);
        cycled[i] = score(ground_truth_report(wideband_covariance(stale), grid, tables, sim.num_beams));

        if (preds && preds->reports[i]) {
            predicted[i] = score(*preds->reports[i]);
            has_prediction[i] = true;
        }
    });

    std::vector<EvalRecord> predicted_present;
    for (std::size_t i = 0; i < n; ++i) {
        if (has_prediction[i]) {
            predicted_present.push_back(predicted[i]);
        }
    }

    std::vector<std::pair<std::string, std::vector<SummaryRow>>> sources;
    sources.emplace_back("baseline-full", aggregate(full));
    sources.emplace_back("baseline-cycled", aggregate(cycled));
    if (preds && !predicted_present.empty()) {
        sources.emplace_back("predicted", aggregate(predicted_present));
    }

    // Ascending SNR, sources in fixed order within each SNR.
    std::vector<double> snrs;
    for (const auto& row : sources.front().second) {
        snrs.push_back(row.snr_db);
    }
    std::vector<EvaluationRow> rows;
    for (const double snr : snrs) {
        for (const auto& [name, summary] : sources) {
            for (const SummaryRow& row : summary) {
                if (row.snr_db == snr) {
                    rows.push_back({name, row});
                }
            }
        }
    }
    return rows;
}

std::vector<VariationRow> cmd_variation(const VariationOptions& opts) {
    opts.sim.validate();
    check_snr_list(opts.snr_list);
    if (opts.samples == 0) {
        throw ConfigError("--samples must be >= 1");
    }
    if (opts.quantity != "beamset" && opts.quantity != "dominant-beam") {
        throw ConfigError("--quantity must be beamset or dominant-beam");
    }
    if (opts.mode != "index-diff" && opts.mode != "change-indicator") {
        throw ConfigError("--mode must be index-diff or change-indicator");
    }
    const SimulationConfig& sim = opts.sim;
    const SubPanelPartition part = partition(sim.antenna, sim.rho_x, sim.rho_y);
    if (part.rho() < 2) {
        throw ConfigError("variation score is undefined for rho = 1; use --rho-x/--rho-y with rho >= 2");
    }
    const BeamspaceGrid panel_grid(part.panel);
    const int panel_beams = std::min(sim.num_beams, part.panel.n_elements());
    const VariationMode mode =
        opts.mode == "index-diff" ? VariationMode::kIndexDifference : VariationMode::kChangeIndicator;
    const bool beamset = opts.quantity == "beamset";

    std::vector<int> identity(static_cast<std::size_t>(part.rho()));
    std::iota(identity.begin(), identity.end(), 0);
    const CycleSchedule sched = make_schedule(part, 0.0, sim.scenario.csi_period_s, identity);

    std::vector<double> snrs = opts.snr_list;
    std::sort(snrs.begin(), snrs.end());
    snrs.erase(std::unique(snrs.begin(), snrs.end()), snrs.end());

    std::vector<std::vector<double>> scores(snrs.size(), std::vector<double>(opts.samples));
    parallel_for(opts.samples, worker_count(opts.threads), [&](std::size_t s) {
        const std::uint64_t sample_seed = derive_seed(opts.seed, s);
        ChannelRealization real = generate_channel(sim.scenario, sim.antenna, derive_seed(sample_seed, Stream::kChannel));
        if (opts.static_channel) {
            for (RayCluster& ray : real.clusters) {
                ray.doppler_hz = 0.0;
            }
        }
        for (std::size_t k = 0; k < snrs.size(); ++k) {
            const std::vector<CycleMeasurement> cycles =
                sound_cycle(real, sched, part, snrs[k], derive_seed(sample_seed, Stream::kCycleNoise));
            std::vector<double> values;
            for (const CycleMeasurement& m : cycles) {
                const CycleQuantity q = per_cycle_quantity(m, panel_grid, panel_beams);
                values.push_back(beamset ? q.beamset : q.dominant_beam);
            }
            scores[k][s] = variation_score(values, mode);
        }
    });

    std::vector<VariationRow> rows;
    for (std::size_t k = 0; k < snrs.size(); ++k) {
        VariationRow row;
        row.snr_db = snrs[k];
        row.samples = opts.samples;
        for (const double v : scores[k]) {
            row.mean += v;
        }
        row.mean /= static_cast<double>(opts.samples);
        double ss = 0.0;
        for (const double v : scores[k]) {
            ss += (v - row.mean) * (v - row.mean);
        }
        row.std = std::sqrt(ss / static_cast<double>(opts.samples));
        rows.push_back(row);
    }
    return rows;
}

std::vector<ScalingPoint> cmd_bench(const BenchOptions& opts) {
    if (opts.sizes.empty()) {
        throw ConfigError("--sizes must list at least one N_t");
    }
    for (const int n : opts.sizes) {
        if (n < 2) {
            throw ConfigError("--sizes entries must be >= 2");
        }
    }
    if (opts.rho < 1 || opts.latent_dim < 1 || !(opts.min_seconds > 0.0)) {
        throw ConfigError("--rho, --latent-dim and --min-time must be positive");
    }
    return measure_scaling(opts.sizes, opts.rho, opts.latent_dim, opts.min_seconds, opts.seed);
}

void cmd_export_labels(const fs::path& dataset, const fs::path& out) {
    const DatasetManifest manifest = read_manifest(dataset);
    const std::vector<TypeIIReport> labels = read_labels(dataset, manifest);
    std::vector<std::uint64_t> ids;
    for (const SampleRecord& r : manifest.samples) {
        ids.push_back(r.id);
    }
    write_predictions(out, manifest, ids, labels);
}

std::string evaluation_csv(const std::vector<EvaluationRow>& rows) {
    std::ostringstream os;
    os << "source,snr_db,count,sgcs_mean,sgcs_std,bf_gain_mean,bf_gain_std,acc_beamset,acc_indices,acc_amp,"
          "acc_phase,acc_amp_slot,acc_phase_slot\n";
    for (const EvaluationRow& r : rows) {
        const SummaryRow& s = r.summary;
        os << r.source << ',' << format_number(s.snr_db) << ',' << s.count << ',' << format_number(s.sgcs.mean) << ','
           << format_number(s.sgcs.std) << ',' << format_number(s.bf_gain.mean) << ','
           << format_number(s.bf_gain.std) << ',' << format_number(s.acc_beamset.mean) << ','
           << format_number(s.acc_indices.mean) << ',' << format_number(s.acc_amp.mean) << ','
           << format_number(s.acc_phase.mean) << ',' << format_number(s.acc_amp_slot.mean) << ','
           << format_number(s.acc_phase_slot.mean) << '\n';
    }
    return os.str();
}

std::string variation_csv(const std::vector<VariationRow>& rows) {
    std::ostringstream os;
    os << "snr_db,samples,score_mean,score_std\n";
    for (const VariationRow& r : rows) {
        os << format_number(r.snr_db) << ',' << r.samples << ',' << format_number(r.mean) << ','
           << format_number(r.std) << '\n';
    }
    return os.str();
}

std::string bench_csv(const std::vector<ScalingPoint>& points) {
    std::ostringstream os;
    os << "n_t,evd_seconds,subpanel_seconds\n";
    for (const ScalingPoint& p : points) {
        os << p.n_t << ',' << format_number(p.evd_seconds) << ',' << format_number(p.subpanel_seconds) << '\n';
    }
    return os.str();
}

}  // namespace portcycle::cli
