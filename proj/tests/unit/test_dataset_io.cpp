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

#include <gtest/gtest.h>

#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "portcycle/errors.hpp"

using namespace portcycle;
using portcycle::testing::make_samples;
using portcycle::testing::slurp;
using portcycle::testing::small_header;
using portcycle::testing::TempDir;

namespace {

void write_text(const std::filesystem::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary);
    out << s;
}

nlohmann::json prediction_entry(std::uint64_t id, const TypeIIReport& r) {
    return {{"id", id},
            {"beamset", r.beamset},
            {"beam_indices", r.beam_indices},
            {"amp_levels", r.amp_levels},
            {"phase_levels", r.phase_levels},
            {"strongest", r.strongest}};
}

}  // namespace

TEST(Dataset, RoundTripAndShape) {
    const TempDir dir("ds-roundtrip");
    const DatasetHeader h = small_header();
    const auto samples = make_samples(h, 6);
    const DatasetManifest m = export_dataset(dir.path(), h, samples);

    EXPECT_EQ(m.rho, 2);
    EXPECT_EQ(m.panel_n_x, 2);
    EXPECT_EQ(m.panel_n_y, 2);
    const auto shape = m.payload_shape();
    std::uint64_t product = 4;
    for (auto d : shape) {
        product *= d;
    }
    // samples x rho x n_x' x n_y' x rx x tones x pol x (re, im)
    EXPECT_EQ(product, 6u * 2 * 2 * 2 * 2 * 4 * 2 * 2 * 4);
    EXPECT_EQ(std::filesystem::file_size(dir / kPayloadFile), product);
    EXPECT_EQ(std::filesystem::file_size(dir / kLabelsFile), 6u * (2 + 5 * 2) * 4);

    const Dataset back = import_dataset(dir.path());
    ASSERT_EQ(back.samples.size(), samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        EXPECT_EQ(back.samples[i].label, samples[i].label);
        EXPECT_EQ(back.samples[i].seed, samples[i].seed);
        ASSERT_EQ(back.samples[i].cycles.size(), samples[i].cycles.size());
        for (std::size_t c = 0; c < samples[i].cycles.size(); ++c) {
            const auto& a = samples[i].cycles[c];
            const auto& b = back.samples[i].cycles[c];
            EXPECT_EQ(a.panel_id, b.panel_id);
            EXPECT_EQ(a.time_s, b.time_s);
            for (std::size_t e = 0; e < a.tensor.size(); ++e) {
                EXPECT_EQ(static_cast<float>(a.tensor[e].real()), b.tensor[e].real());
                EXPECT_EQ(static_cast<float>(a.tensor[e].imag()), b.tensor[e].imag());
            }
        }
    }

    const TempDir again("ds-roundtrip-2");
    export_dataset(again.path(), back.manifest.header, back.samples);
    EXPECT_EQ(slurp(dir / kPayloadFile), slurp(again / kPayloadFile));
    EXPECT_EQ(slurp(dir / kLabelsFile), slurp(again / kLabelsFile));
    EXPECT_EQ(slurp(dir / kManifestFile), slurp(again / kManifestFile));
}

TEST(Dataset, LittleEndianFloatLayout) {
    const TempDir dir("ds-layout");
    const DatasetHeader h = small_header();
    const auto samples = make_samples(h, 1);
    export_dataset(dir.path(), h, samples);
    const std::string raw = slurp(dir / kPayloadFile);
    const auto& c0 = samples[0].cycles[0];
    // Element (x=1, y=0, rx=1, k=2, pol=1), imaginary part.
    const std::size_t idx = c0.offset(1, 0, 1, 2, 1) * 2 + 1;
    const auto* p = reinterpret_cast<const unsigned char*>(raw.data()) + idx * 4;
    const std::uint32_t bits = p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
    float v = 0.0f;
    std::memcpy(&v, &bits, 4);
    EXPECT_EQ(v, static_cast<float>(c0.at(1, 0, 1, 2, 1).imag()));
}

TEST(Dataset, PartialReadMatchesFull) {
    const TempDir dir("ds-partial");
    const DatasetHeader h = small_header();
    const auto samples = make_samples(h, 3);
    const DatasetManifest m = export_dataset(dir.path(), h, samples);
    const Dataset all = import_dataset(dir.path());
    const auto cycles = read_sample_cycles(dir.path(), m, 2);
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        EXPECT_EQ(cycles[c].tensor, all.samples[2].cycles[c].tensor);
    }
    EXPECT_THROW(read_sample_cycles(dir.path(), m, 3), DomainError);
}

TEST(Dataset, EmptyRejectedWithoutOutput) {
    const TempDir dir("ds-empty");
    const std::vector<DatasetSample> none;
    EXPECT_THROW(export_dataset(dir / "out", small_header(), none), DomainError);
    EXPECT_FALSE(std::filesystem::exists(dir / "out" / kManifestFile));
}

TEST(Dataset, TruncatedPayloadDetected) {
    const TempDir dir("ds-trunc");
    const DatasetHeader h = small_header();
    export_dataset(dir.path(), h, make_samples(h, 2));
    const std::string raw = slurp(dir / kPayloadFile);
    write_text(dir / kPayloadFile, raw.substr(0, raw.size() - 4));
    EXPECT_THROW(import_dataset(dir.path()), ValidationError);
}

TEST(Dataset, MissingManifestIsIoError) {
    const TempDir dir("ds-missing");
    EXPECT_THROW(read_manifest(dir.path()), IoError);
}

TEST(Dataset, UncommittedWriterLeavesNothing) {
    const TempDir dir("ds-abort");
    const DatasetHeader h = small_header();
    {
        DatasetWriter w(dir / "out", h);
        w.append(make_samples(h, 1)[0]);
    }
    EXPECT_FALSE(std::filesystem::exists(dir / "out" / kManifestFile));
    EXPECT_FALSE(std::filesystem::exists(dir / "out" / kPayloadFile));
}

class Predictions : public ::testing::Test {
protected:
    void SetUp() override {
        header_ = small_header();
        samples_ = make_samples(header_, 4);
        manifest_ = export_dataset(dir_.path(), header_, samples_);
    }

    nlohmann::json document() const {
        nlohmann::json doc = {{"format_version", 1}, {"num_beams", 2}, {"n_psk", 8}};
        doc["predictions"] = nlohmann::json::array();
        for (std::size_t i = 0; i < samples_.size(); ++i) {
            doc["predictions"].push_back(prediction_entry(manifest_.samples[i].id, samples_[i].label));
        }
        return doc;
    }

    std::string error_for(const nlohmann::json& doc) {
        write_text(dir_ / "pred.json", doc.dump());
        try {
            import_predictions(dir_ / "pred.json", manifest_);
        } catch (const ValidationError& e) {
            return e.what();
        }
        return "";
    }

    TempDir dir_{"pred"};
    DatasetHeader header_;
    std::vector<DatasetSample> samples_;
    DatasetManifest manifest_;
};

TEST_F(Predictions, WriteThenImport) {
    std::vector<std::uint64_t> ids;
    std::vector<TypeIIReport> reports;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        ids.push_back(manifest_.samples[i].id);
        reports.push_back(samples_[i].label);
    }
    write_predictions(dir_ / "p.json", manifest_, ids, reports);
    const PredictionImport imp = import_predictions(dir_ / "p.json", manifest_);
    EXPECT_FALSE(imp.partial());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        ASSERT_TRUE(imp.reports[i].has_value());
        EXPECT_EQ(*imp.reports[i], reports[i]);
    }
}

TEST_F(Predictions, PermutedOrderRealignedById) {
    nlohmann::json doc = document();
    auto& arr = doc["predictions"];
    std::reverse(arr.begin(), arr.end());
    write_text(dir_ / "pred.json", doc.dump());
    const PredictionImport imp = import_predictions(dir_ / "pred.json", manifest_);
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        EXPECT_EQ(*imp.reports[i], samples_[i].label);
    }
}

TEST_F(Predictions, MissingSamplesArePartial) {
    nlohmann::json doc = document();
    doc["predictions"].erase(1);
    write_text(dir_ / "pred.json", doc.dump());
    const PredictionImport imp = import_predictions(dir_ / "pred.json", manifest_);
    EXPECT_TRUE(imp.partial());
    EXPECT_EQ(imp.missing, 1u);
    EXPECT_FALSE(imp.reports[1].has_value());
}

TEST_F(Predictions, AmplitudeLevelOutOfRange) {
    nlohmann::json doc = document();
    doc["predictions"][2]["amp_levels"][1] = 9;
    const std::string msg = error_for(doc);
    EXPECT_NE(msg.find("sample 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("amp_levels"), std::string::npos) << msg;
}

TEST_F(Predictions, SchemaViolations) {
    nlohmann::json doc = document();
    doc["predictions"][0]["phase_levels"][0] = 8;
    EXPECT_NE(error_for(doc).find("phase_levels"), std::string::npos);

    doc = document();
    doc["predictions"][0]["beamset"] = 99;
    EXPECT_NE(error_for(doc).find("beamset"), std::string::npos);

    doc = document();
    doc["predictions"][0]["beam_indices"] = {1, 1};
    EXPECT_NE(error_for(doc).find("duplicate"), std::string::npos);

    doc = document();
    doc["predictions"][0]["beam_indices"] = {1};
    EXPECT_NE(error_for(doc).find("beam_indices"), std::string::npos);

    doc = document();
    doc["predictions"][0]["id"] = 1000;
    EXPECT_NE(error_for(doc).find("not present"), std::string::npos);

    doc = document();
    doc["predictions"].push_back(doc["predictions"][0]);
    EXPECT_NE(error_for(doc).find("duplicate prediction"), std::string::npos);

    doc = document();
    doc["n_psk"] = 4;
    EXPECT_NE(error_for(doc).find("n_psk"), std::string::npos);

    doc = document();
    doc["format_version"] = 2;
    EXPECT_NE(error_for(doc).find("format_version"), std::string::npos);

    write_text(dir_ / "pred.json", "{not json");
    EXPECT_THROW(import_predictions(dir_ / "pred.json", manifest_), ValidationError);
}

TEST_F(Predictions, StrongestOptional) {
    nlohmann::json doc = document();
    for (auto& e : doc["predictions"]) {
        e.erase("strongest");
    }
    write_text(dir_ / "pred.json", doc.dump());
    const PredictionImport imp = import_predictions(dir_ / "pred.json", manifest_);
    for (const auto& r : imp.reports) {
        ASSERT_TRUE(r.has_value());
        EXPECT_EQ(r->amp_levels[static_cast<std::size_t>(r->strongest)], 7);
    }
}
