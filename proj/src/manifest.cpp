// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "rforge/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "rforge/csv.hpp"
#include "rforge/error.hpp"

namespace rforge {

std::string_view to_string(Source source) noexcept {
    return source == Source::real ? "real" : "synthetic";
}

std::optional<Source> parse_source(std::string_view text) noexcept {
    if (text == "real") return Source::real;
    if (text == "synthetic") return Source::synthetic;
    return std::nullopt;
}

Manifest::Manifest(std::vector<ManifestRecord> records) : records_(std::move(records)) {
    std::unordered_set<std::string_view> ids;
    std::unordered_set<std::string_view> seen_labels;
    ids.reserve(records_.size());
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        if (r.id.empty()) {
            throw Error("record " + std::to_string(i) + " has an empty id");
        }
        if (r.label.empty()) {
            throw Error("record '" + r.id + "' has an empty label");
        }
        if (!ids.insert(r.id).second) {
            throw Error("duplicate id '" + r.id + "'");
        }
        if (seen_labels.insert(r.label).second) {
            labels_.push_back(r.label);
        }
    }
}

std::optional<std::size_t> Manifest::label_index(std::string_view label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

Manifest load_manifest(const std::filesystem::path& path) {
    const csv::Table table = csv::read_file(path);
    if (table.header.size() < 3 || table.header[0] != "id" || table.header[1] != "label" ||
        table.header[2] != "source") {
        throw ParseError("'" + path.string() + "' row 1: expected header 'id,label,source'", 1);
    }

    std::vector<ManifestRecord> records;
    records.reserve(table.rows.size());
    std::unordered_map<std::string, std::size_t> first_row;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& fields = table.rows[i];
        const std::size_t row = table.row_numbers[i];
        const auto fail = [&](const std::string& msg) {
            throw ParseError("'" + path.string() + "' row " + std::to_string(row) + ": " + msg, row);
        };
        if (fields.size() < 3) fail("expected at least 3 fields, got " + std::to_string(fields.size()));
        if (fields[0].empty()) fail("missing id");
        if (fields[1].empty()) fail("missing label");
        const auto source = parse_source(fields[2]);
        if (!source) fail("unknown source '" + fields[2] + "' (expected real or synthetic)");
        const auto [it, inserted] = first_row.emplace(fields[0], row);
        if (!inserted) fail("duplicate id '" + fields[0] + "' (first seen on row " + std::to_string(it->second) + ")");
        records.push_back({fields[0], fields[1], *source});
    }
    return Manifest(std::move(records));
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << "id,label,source\n";
    for (const auto& r : manifest.records()) {
        out << csv::quote_if_needed(r.id) << ',' << csv::quote_if_needed(r.label) << ',' << to_string(r.source)
            << '\n';
    }
}

std::size_t LabelStats::frequency_of(std::string_view label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw Error("unknown label '" + std::string(label) + "'");
    return frequency[static_cast<std::size_t>(it - labels.begin())];
}

double LabelStats::ratio_of(std::string_view label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw Error("unknown label '" + std::string(label) + "'");
    return ratio[static_cast<std::size_t>(it - labels.begin())];
}

LabelStats make_label_stats(std::vector<std::string> labels, std::vector<std::size_t> frequency) {
    if (labels.size() != frequency.size()) throw Error("label/frequency length mismatch");
    LabelStats stats;
    stats.labels = std::move(labels);
    stats.frequency = std::move(frequency);
    for (auto n : stats.frequency) stats.total += n;
    if (stats.total == 0) throw Error("empty population");
    stats.ratio.reserve(stats.frequency.size());
    for (auto n : stats.frequency) {
        stats.ratio.push_back(static_cast<double>(n) / static_cast<double>(stats.total));
    }
    return stats;
}

LabelStats compute_label_stats(const Manifest& manifest, std::optional<Source> source_filter) {
    const auto& labels = manifest.label_set();
    std::vector<std::size_t> counts(labels.size(), 0);
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
    for (const auto& r : manifest.records()) {
        if (source_filter && r.source != *source_filter) continue;
        ++counts[index.at(r.label)];
    }

    std::vector<std::string> kept_labels;
    std::vector<std::size_t> kept_counts;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (counts[i] > 0) {
            kept_labels.push_back(labels[i]);
            kept_counts.push_back(counts[i]);
        }
    }
    if (kept_labels.empty()) throw Error("empty population");
    return make_label_stats(std::move(kept_labels), std::move(kept_counts));
}

}  // namespace rforge
