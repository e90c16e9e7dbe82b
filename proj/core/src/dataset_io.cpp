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

#include "portcycle/dataset_io.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "portcycle/errors.hpp"

namespace portcycle {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json snr_to_json(double snr) {
    if (std::isinf(snr) && snr > 0.0) {
        return "inf";
    }
    return snr;
}

double snr_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") {
        return kNoiselessSnr;
    }
    return j.get<double>();
}

json antenna_to_json(const AntennaConfig& a) {
    return {{"n_x", a.n_x}, {"n_y", a.n_y}, {"n_pol", a.n_pol}, {"o1", a.o1}, {"o2", a.o2}};
}

AntennaConfig antenna_from_json(const json& j) {
    AntennaConfig a;
    a.n_x = j.at("n_x").get<int>();
    a.n_y = j.at("n_y").get<int>();
    a.n_pol = j.at("n_pol").get<int>();
    a.o1 = j.at("o1").get<int>();
    a.o2 = j.at("o2").get<int>();
    return a;
}

json scenario_to_json(const ScenarioConfig& s) {
    return {{"carrier_freq_hz", s.carrier_freq_hz},
            {"bandwidth_hz", s.bandwidth_hz},
            {"subcarrier_spacing_hz", s.subcarrier_spacing_hz},
            {"n_subcarriers", s.n_subcarriers},
            {"ue_speed_mps", s.ue_speed_mps},
            {"csi_period_s", s.csi_period_s},
            {"n_rx", s.n_rx},
            {"n_clusters", s.n_clusters},
            {"los_k_factor_db", s.los_k_factor_db},
            {"max_excess_delay_s", s.max_excess_delay_s}};
}

ScenarioConfig scenario_from_json(const json& j) {
    ScenarioConfig s;
    s.carrier_freq_hz = j.at("carrier_freq_hz").get<double>();
    s.bandwidth_hz = j.at("bandwidth_hz").get<double>();
    s.subcarrier_spacing_hz = j.at("subcarrier_spacing_hz").get<double>();
    s.n_subcarriers = j.at("n_subcarriers").get<int>();
    s.ue_speed_mps = j.at("ue_speed_mps").get<double>();
    s.csi_period_s = j.at("csi_period_s").get<double>();
    s.n_rx = j.at("n_rx").get<int>();
    s.n_clusters = j.at("n_clusters").get<int>();
    s.los_k_factor_db = j.at("los_k_factor_db").get<double>();
    s.max_excess_delay_s = j.at("max_excess_delay_s").get<double>();
    return s;
}

json manifest_to_json(const DatasetManifest& m) {
    const DatasetHeader& h = m.header;
    json snrs = json::array();
    for (const double s : h.snr_list) {
        snrs.push_back(snr_to_json(s));
    }

    const auto shape = m.payload_shape();
    json strides = json::array();
    std::uint64_t stride = sizeof(float);
    std::array<std::uint64_t, 8> byte_strides{};
    for (int d = 7; d >= 0; --d) {
        byte_strides[static_cast<std::size_t>(d)] = stride;
        stride *= shape[static_cast<std::size_t>(d)];
    }
    for (const auto s : byte_strides) {
        strides.push_back(s);
    }

    const int L = h.num_beams;
    json samples = json::array();
    for (const SampleRecord& r : m.samples) {
        samples.push_back({{"id", r.id},
                           {"snr_db", snr_to_json(r.snr_db)},
                           {"seed", r.seed},
                           {"panel_order", r.panel_order},
                           {"times_s", r.times_s}});
    }

    return {
        {"format_version", m.format_version},
        {"antenna", antenna_to_json(h.antenna)},
        {"scenario", scenario_to_json(h.scenario)},
        {"partition", {{"rho_x", h.rho_x}, {"rho_y", h.rho_y}, {"rho", m.rho}}},
        {"codebook",
         {{"num_beams", L},
          {"o1", h.antenna.o1},
          {"o2", h.antenna.o2},
          {"n_psk", h.n_psk},
          {"n_amplitude_levels", 8},
          {"n_beamsets", h.antenna.n_beamsets()},
          {"beams_per_set", h.antenna.n_elements()}}},
        {"snr_list", snrs},
        {"sample_count", m.samples.size()},
        {"base_seed", h.base_seed},
        {"perm_policy", h.perm_policy},
        {"label_time_offset_s", h.label_time_offset_s},
        {"split", {{"train", h.split.train}, {"validation", h.split.validation}, {"test", h.split.test}, {"seed", h.split_seed}}},
        {"payload",
         {{"file", kPayloadFile},
          {"dtype", "float32"},
          {"byte_order", "little"},
          {"dims", {"sample", "cycle", "x", "y", "rx", "subcarrier", "pol", "complex"}},
          {"shape", shape},
          {"strides_bytes", strides},
          {"total_bytes", m.payload_bytes()}}},
        {"labels",
         {{"file", kLabelsFile},
          {"dtype", "int32"},
          {"byte_order", "little"},
          {"record_fields",
           {{{"name", "beamset"}, {"count", 1}},
            {{"name", "beam_indices"}, {"count", L}},
            {{"name", "amp_levels"}, {"count", 2 * L}},
            {{"name", "phase_levels"}, {"count", 2 * L}},
            {{"name", "strongest"}, {"count", 1}}}},
          {"record_bytes", m.label_record_ints() * 4},
          {"total_bytes", m.labels_bytes()}}},
        {"samples", samples},
    };
}

DatasetManifest manifest_from_json(const json& j) {
    DatasetManifest m;
    m.format_version = j.at("format_version").get<int>();
    if (m.format_version != kDatasetFormatVersion) {
        throw ValidationError("unsupported dataset format version " + std::to_string(m.format_version));
    }
    DatasetHeader& h = m.header;
    h.antenna = antenna_from_json(j.at("antenna"));
    h.scenario = scenario_from_json(j.at("scenario"));
    h.rho_x = j.at("partition").at("rho_x").get<int>();
    h.rho_y = j.at("partition").at("rho_y").get<int>();
    h.num_beams = j.at("codebook").at("num_beams").get<int>();
    h.n_psk = j.at("codebook").at("n_psk").get<int>();
    for (const json& s : j.at("snr_list")) {
        h.snr_list.push_back(snr_from_json(s));
    }
    h.base_seed = j.at("base_seed").get<std::uint64_t>();
    h.perm_policy = j.at("perm_policy").get<std::string>();
    h.label_time_offset_s = j.at("label_time_offset_s").get<double>();
    const json& split = j.at("split");
    h.split = {split.at("train").get<double>(), split.at("validation").get<double>(), split.at("test").get<double>()};
    h.split_seed = split.at("seed").get<std::uint64_t>();

    const json& shape = j.at("payload").at("shape");
    m.rho = shape.at(1).get<int>();
    m.panel_n_x = shape.at(2).get<int>();
    m.panel_n_y = shape.at(3).get<int>();
    m.n_rx = shape.at(4).get<int>();
    m.n_subcarriers = shape.at(5).get<int>();

    for (const json& s : j.at("samples")) {
        SampleRecord r;
        r.id = s.at("id").get<std::uint64_t>();
        r.snr_db = snr_from_json(s.at("snr_db"));
        r.seed = s.at("seed").get<std::uint64_t>();
        r.panel_order = s.at("panel_order").get<std::vector<int>>();
        r.times_s = s.at("times_s").get<std::vector<double>>();
        m.samples.push_back(std::move(r));
    }
    if (m.samples.size() != j.at("sample_count").get<std::size_t>()) {
        throw ValidationError("manifest sample_count disagrees with the sample table");
    }
    if (m.rho != h.rho_x * h.rho_y || m.panel_n_x * h.rho_x != h.antenna.n_x ||
        m.panel_n_y * h.rho_y != h.antenna.n_y || m.n_rx != h.scenario.n_rx ||
        m.n_subcarriers != h.scenario.n_subcarriers) {
        throw ValidationError("manifest payload shape is inconsistent with its configuration");
    }
    return m;
}

void put_le32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFFU));
    }
}

std::uint32_t get_le32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

fs::path temp_sibling(const fs::path& path) { return fs::path(path.string() + ".tmp"); }

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_sample_shape(const DatasetManifest& m, const DatasetSample& s) {
    if (static_cast<int>(s.cycles.size()) != m.rho) {
        throw DomainError("sample has " + std::to_string(s.cycles.size()) + " cycles, expected " + std::to_string(m.rho));
    }
    for (const CycleMeasurement& c : s.cycles) {
        if (c.n_x != m.panel_n_x || c.n_y != m.panel_n_y || c.n_rx != m.n_rx || c.n_subcarriers != m.n_subcarriers ||
            c.tensor.size() != m.cycle_floats() / 2) {
            throw DomainError("cycle measurement shape does not match the dataset");
        }
    }
    if (s.label.num_beams() != m.header.num_beams ||
        s.label.amp_levels.size() != static_cast<std::size_t>(2 * m.header.num_beams) ||
        s.label.phase_levels.size() != static_cast<std::size_t>(2 * m.header.num_beams)) {
        throw DomainError("label beam count does not match the dataset");
    }
}

TypeIIReport decode_label(const unsigned char* p, int num_beams) {
    const auto next = [&p]() {
        const auto v = static_cast<std::int32_t>(get_le32(p));
        p += 4;
        return static_cast<int>(v);
    };
    TypeIIReport r;
    r.beamset = next();
    for (int i = 0; i < num_beams; ++i) {
        r.beam_indices.push_back(next());
    }
    for (int i = 0; i < 2 * num_beams; ++i) {
        r.amp_levels.push_back(next());
    }
    for (int i = 0; i < 2 * num_beams; ++i) {
        r.phase_levels.push_back(next());
    }
    r.strongest = next();
    return r;
}

std::vector<CycleMeasurement> decode_cycles(const unsigned char* p, const DatasetManifest& m,
                                            const SampleRecord& rec) {
    std::vector<CycleMeasurement> cycles;
    const std::size_t n_complex = m.cycle_floats() / 2;
    for (int c = 0; c < m.rho; ++c) {
        CycleMeasurement cm;
        cm.panel_id = rec.panel_order.at(static_cast<std::size_t>(c));
        cm.time_s = rec.times_s.at(static_cast<std::size_t>(c));
        cm.n_x = m.panel_n_x;
        cm.n_y = m.panel_n_y;
        cm.n_rx = m.n_rx;
        cm.n_subcarriers = m.n_subcarriers;
        cm.tensor.resize(n_complex);
        for (std::size_t i = 0; i < n_complex; ++i) {
            const float re = std::bit_cast<float>(get_le32(p));
            const float im = std::bit_cast<float>(get_le32(p + 4));
            p += 8;
            cm.tensor[i] = {static_cast<double>(re), static_cast<double>(im)};
        }
        cycles.push_back(std::move(cm));
    }
    return cycles;
}

}  // namespace

std::array<std::uint64_t, 8> DatasetManifest::payload_shape() const {
    return {samples.size(),
            static_cast<std::uint64_t>(rho),
            static_cast<std::uint64_t>(panel_n_x),
            static_cast<std::uint64_t>(panel_n_y),
            static_cast<std::uint64_t>(n_rx),
            static_cast<std::uint64_t>(n_subcarriers),
            2,
            2};
}

std::uint64_t DatasetManifest::cycle_floats() const {
    return static_cast<std::uint64_t>(panel_n_x) * panel_n_y * n_rx * n_subcarriers * 2 * 2;
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
    const fs::path tmp = temp_sibling(path);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot create " + tmp.string());
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) {
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move " + tmp.string() + " into place");
    }
}

DatasetWriter::DatasetWriter(fs::path dir, DatasetHeader header) : dir_(std::move(dir)) {
    header.antenna.validate();
    header.scenario.validate();
    manifest_.header = std::move(header);
    const SubPanelPartition part = partition(manifest_.header.antenna, manifest_.header.rho_x, manifest_.header.rho_y);
    manifest_.rho = part.rho();
    manifest_.panel_n_x = part.panel.n_x;
    manifest_.panel_n_y = part.panel.n_y;
    manifest_.n_rx = manifest_.header.scenario.n_rx;
    manifest_.n_subcarriers = manifest_.header.scenario.n_subcarriers;

    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) {
        throw IoError("cannot create dataset directory " + dir_.string());
    }
    payload_.open(temp_sibling(dir_ / kPayloadFile), std::ios::binary | std::ios::trunc);
    labels_.open(temp_sibling(dir_ / kLabelsFile), std::ios::binary | std::ios::trunc);
    if (!payload_ || !labels_) {
        throw IoError("cannot create payload files in " + dir_.string());
    }
}

DatasetWriter::~DatasetWriter() {
    if (!committed_) {
        payload_.close();
        labels_.close();
        std::error_code ec;
        fs::remove(temp_sibling(dir_ / kPayloadFile), ec);
        fs::remove(temp_sibling(dir_ / kLabelsFile), ec);
    }
}

void DatasetWriter::append(const DatasetSample& sample) {
    if (committed_) {
        throw DomainError("dataset already committed");
    }
    check_sample_shape(manifest_, sample);

    std::string buf;
    buf.reserve(static_cast<std::size_t>(manifest_.sample_stride_bytes()));
    SampleRecord rec;
    rec.id = manifest_.samples.size();
    rec.snr_db = sample.snr_db;
    rec.seed = sample.seed;
    for (const CycleMeasurement& c : sample.cycles) {
        rec.panel_order.push_back(c.panel_id);
        rec.times_s.push_back(c.time_s);
        for (const cdouble v : c.tensor) {
            put_le32(buf, std::bit_cast<std::uint32_t>(static_cast<float>(v.real())));
            put_le32(buf, std::bit_cast<std::uint32_t>(static_cast<float>(v.imag())));
        }
    }
    payload_.write(buf.data(), static_cast<std::streamsize>(buf.size()));

    std::string lab;
    const TypeIIReport& r = sample.label;
    const auto put = [&lab](int v) { put_le32(lab, static_cast<std::uint32_t>(static_cast<std::int32_t>(v))); };
    put(r.beamset);
    for (const int v : r.beam_indices) put(v);
    for (const int v : r.amp_levels) put(v);
    for (const int v : r.phase_levels) put(v);
    put(r.strongest);
    labels_.write(lab.data(), static_cast<std::streamsize>(lab.size()));

    if (!payload_ || !labels_) {
        throw IoError("write failed in " + dir_.string());
    }
    manifest_.samples.push_back(std::move(rec));
}

DatasetManifest DatasetWriter::commit() {
    if (manifest_.samples.empty()) {
        throw DomainError("refusing to write an empty dataset");
    }
    payload_.close();
    labels_.close();
    if (!payload_ || !labels_) {
        throw IoError("flush failed in " + dir_.string());
    }
    std::error_code ec;
    fs::rename(temp_sibling(dir_ / kPayloadFile), dir_ / kPayloadFile, ec);
    if (!ec) {
        fs::rename(temp_sibling(dir_ / kLabelsFile), dir_ / kLabelsFile, ec);
    }
    if (ec) {
        throw IoError("cannot move payload files into place in " + dir_.string());
    }
    write_file_atomic(dir_ / kManifestFile, manifest_to_json(manifest_).dump(2) + "\n");
    committed_ = true;
    return manifest_;
}

DatasetManifest export_dataset(const fs::path& dir, const DatasetHeader& header, std::span<const DatasetSample> samples) {
    if (samples.empty()) {
        throw DomainError("refusing to write an empty dataset");
    }
    DatasetWriter writer(dir, header);
    for (const DatasetSample& s : samples) {
        writer.append(s);
    }
    return writer.commit();
}

DatasetManifest read_manifest(const fs::path& dir) {
    const std::string text = read_file(dir / kManifestFile);
    try {
        return manifest_from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed manifest: ") + e.what());
    }
}

std::vector<TypeIIReport> read_labels(const fs::path& dir, const DatasetManifest& manifest) {
    const std::string raw = read_file(dir / kLabelsFile);
    if (raw.size() != manifest.labels_bytes()) {
        throw ValidationError("labels.bin has " + std::to_string(raw.size()) + " bytes, manifest implies " +
                              std::to_string(manifest.labels_bytes()));
    }
    std::vector<TypeIIReport> out;
    const auto* p = reinterpret_cast<const unsigned char*>(raw.data());
    const std::size_t record = static_cast<std::size_t>(manifest.label_record_ints()) * 4;
    for (std::size_t i = 0; i < manifest.samples.size(); ++i) {
        out.push_back(decode_label(p + i * record, manifest.header.num_beams));
    }
    return out;
}

std::vector<CycleMeasurement> read_sample_cycles(const fs::path& dir, const DatasetManifest& manifest, std::size_t index) {
    if (index >= manifest.samples.size()) {
        throw DomainError("sample index out of range");
    }
    std::ifstream in(dir / kPayloadFile, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + (dir / kPayloadFile).string());
    }
    const std::uint64_t stride = manifest.sample_stride_bytes();
    std::string buf(static_cast<std::size_t>(stride), '\0');
    in.seekg(static_cast<std::streamoff>(stride * index));
    in.read(buf.data(), static_cast<std::streamsize>(stride));
    if (!in) {
        throw ValidationError("payload.bin is shorter than the manifest implies");
    }
    return decode_cycles(reinterpret_cast<const unsigned char*>(buf.data()), manifest, manifest.samples[index]);
}

Dataset import_dataset(const fs::path& dir) {
    Dataset ds;
    ds.manifest = read_manifest(dir);
    const std::string raw = read_file(dir / kPayloadFile);
    if (raw.size() != ds.manifest.payload_bytes()) {
        throw ValidationError("payload.bin has " + std::to_string(raw.size()) + " bytes, manifest implies " +
                              std::to_string(ds.manifest.payload_bytes()));
    }
    std::vector<TypeIIReport> labels = read_labels(dir, ds.manifest);
    const auto* p = reinterpret_cast<const unsigned char*>(raw.data());
    const std::uint64_t stride = ds.manifest.sample_stride_bytes();
    for (std::size_t i = 0; i < ds.manifest.samples.size(); ++i) {
        const SampleRecord& rec = ds.manifest.samples[i];
        DatasetSample s;
        s.cycles = decode_cycles(p + stride * i, ds.manifest, rec);
        s.label = std::move(labels[i]);
        s.snr_db = rec.snr_db;
        s.seed = rec.seed;
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

namespace {

int get_int_field(const json& entry, const char* field, const std::string& where) {
    if (!entry.contains(field) || !entry.at(field).is_number_integer()) {
        throw ValidationError(where + ": field '" + field + "' missing or not an integer");
    }
    return entry.at(field).get<int>();
}

std::vector<int> get_int_array(const json& entry, const char* field, std::size_t count, const std::string& where) {
    if (!entry.contains(field) || !entry.at(field).is_array()) {
        throw ValidationError(where + ": field '" + field + "' missing or not an array");
    }
    const json& arr = entry.at(field);
    if (arr.size() != count) {
        throw ValidationError(where + ": field '" + field + "' has " + std::to_string(arr.size()) +
                              " entries, expected " + std::to_string(count));
    }
    std::vector<int> out;
    for (const json& v : arr) {
        if (!v.is_number_integer()) {
            throw ValidationError(where + ": field '" + field + "' has a non-integer entry");
        }
        out.push_back(v.get<int>());
    }
    return out;
}

void check_range(const std::vector<int>& values, int limit, const char* field, const std::string& where) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0 || values[i] >= limit) {
            throw ValidationError(where + ": " + field + "[" + std::to_string(i) + "] = " + std::to_string(values[i]) +
                                  " outside [0, " + std::to_string(limit) + ")");
        }
    }
}

}  // namespace

PredictionImport import_predictions(const fs::path& path, const DatasetManifest& manifest) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("prediction file is not valid JSON: ") + e.what());
    }

    const DatasetHeader& h = manifest.header;
    const int L = h.num_beams;
    const int n_beamsets = h.antenna.n_beamsets();
    const int beams_per_set = h.antenna.n_elements();
    const int n_amp = QuantizationTables::standard(h.n_psk).n_amplitude_levels();

    if (!doc.is_object()) {
        throw ValidationError("prediction file: top level must be an object");
    }
    if (get_int_field(doc, "format_version", "prediction file") != kPredictionFormatVersion) {
        throw ValidationError("prediction file: unsupported format_version");
    }
    const std::pair<const char*, int> alphabet[] = {
        {"num_beams", L}, {"n_psk", h.n_psk}, {"n_amplitude_levels", n_amp}, {"n_beamsets", n_beamsets},
        {"beams_per_set", beams_per_set}};
    for (const auto& [field, expected] : alphabet) {
        if (doc.contains(field) && get_int_field(doc, field, "prediction file") != expected) {
            throw ValidationError(std::string("prediction file: ") + field + " does not match the dataset (expected " +
                                  std::to_string(expected) + ")");
        }
    }
    if (!doc.contains("predictions") || !doc.at("predictions").is_array()) {
        throw ValidationError("prediction file: 'predictions' array missing");
    }

    std::unordered_map<std::uint64_t, std::size_t> index_of;
    for (std::size_t i = 0; i < manifest.samples.size(); ++i) {
        index_of.emplace(manifest.samples[i].id, i);
    }

    PredictionImport out;
    out.reports.resize(manifest.samples.size());
    std::size_t position = 0;
    for (const json& entry : doc.at("predictions")) {
        std::string where = "prediction #" + std::to_string(position++);
        if (!entry.is_object() || !entry.contains("id") || !entry.at("id").is_number_unsigned()) {
            throw ValidationError(where + ": field 'id' missing or not a non-negative integer");
        }
        const auto id = entry.at("id").get<std::uint64_t>();
        where = "sample " + std::to_string(id);
        const auto found = index_of.find(id);
        if (found == index_of.end()) {
            throw ValidationError(where + ": id not present in the dataset manifest");
        }
        if (out.reports[found->second].has_value()) {
            throw ValidationError(where + ": duplicate prediction");
        }

        TypeIIReport r;
        r.beamset = get_int_field(entry, "beamset", where);
        if (r.beamset < 0 || r.beamset >= n_beamsets) {
            throw ValidationError(where + ": beamset = " + std::to_string(r.beamset) + " outside [0, " +
                                  std::to_string(n_beamsets) + ")");
        }
        r.beam_indices = get_int_array(entry, "beam_indices", static_cast<std::size_t>(L), where);
        check_range(r.beam_indices, beams_per_set, "beam_indices", where);
        for (std::size_t i = 0; i < r.beam_indices.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (r.beam_indices[i] == r.beam_indices[j]) {
                    throw ValidationError(where + ": beam_indices contains a duplicate");
                }
            }
        }
        r.amp_levels = get_int_array(entry, "amp_levels", static_cast<std::size_t>(2 * L), where);
        check_range(r.amp_levels, n_amp, "amp_levels", where);
        r.phase_levels = get_int_array(entry, "phase_levels", static_cast<std::size_t>(2 * L), where);
        check_range(r.phase_levels, h.n_psk, "phase_levels", where);
        if (entry.contains("strongest")) {
            r.strongest = get_int_field(entry, "strongest", where);
            if (r.strongest < 0 || r.strongest >= 2 * L) {
                throw ValidationError(where + ": strongest outside [0, " + std::to_string(2 * L) + ")");
            }
        } else {
            r.strongest = static_cast<int>(std::max_element(r.amp_levels.begin(), r.amp_levels.end()) -
                                           r.amp_levels.begin());
        }
        out.reports[found->second] = std::move(r);
    }
    for (const auto& r : out.reports) {
        out.missing += r.has_value() ? 0 : 1;
    }
    return out;
}

void write_predictions(const fs::path& path, const DatasetManifest& manifest, std::span<const std::uint64_t> ids,
                       std::span<const TypeIIReport> reports) {
    if (ids.size() != reports.size()) {
        throw DomainError("write_predictions: ids and reports differ in length");
    }
    const DatasetHeader& h = manifest.header;
    json preds = json::array();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const TypeIIReport& r = reports[i];
        preds.push_back({{"id", ids[i]},
                         {"beamset", r.beamset},
                         {"beam_indices", r.beam_indices},
                         {"amp_levels", r.amp_levels},
                         {"phase_levels", r.phase_levels},
                         {"strongest", r.strongest}});
    }
    const json doc = {{"format_version", kPredictionFormatVersion},
                      {"num_beams", h.num_beams},
                      {"n_psk", h.n_psk},
                      {"n_amplitude_levels", 8},
                      {"n_beamsets", h.antenna.n_beamsets()},
                      {"beams_per_set", h.antenna.n_elements()},
                      {"predictions", preds}};
    write_file_atomic(path, doc.dump(1) + "\n");
}

}  // namespace portcycle
