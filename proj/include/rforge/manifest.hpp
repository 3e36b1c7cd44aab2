// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rforge {

enum class Source { real, synthetic };

std::string_view to_string(Source source) noexcept;
/// Parses "real" / "synthetic"; nullopt otherwise.
std::optional<Source> parse_source(std::string_view text) noexcept;

struct ManifestRecord {
    std::string id;
    std::string label;
    Source source = Source::real;

    bool operator==(const ManifestRecord&) const = default;
};

/// Ordered list of records plus the labels in first-appearance order.
/// Construction validates ids (non-empty, unique) and labels (non-empty).
class Manifest {
public:
    Manifest() = default;
    explicit Manifest(std::vector<ManifestRecord> records);

    const std::vector<ManifestRecord>& records() const noexcept { return records_; }
    const std::vector<std::string>& label_set() const noexcept { return labels_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

    /// Position of `label` in label_set(); nullopt if absent.
    std::optional<std::size_t> label_index(std::string_view label) const;

private:
    std::vector<ManifestRecord> records_;
    std::vector<std::string> labels_;
};

/// Reads the `id,label,source` CSV. Extra trailing columns are ignored so a
/// feature CSV can be read as a manifest. Errors are rforge::ParseError with
/// the offending file row.
Manifest load_manifest(const std::filesystem::path& path);

void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

/// Per-label counts over (optionally) one source. Labels follow the
/// manifest's label_set order, restricted to labels that survive the filter.
struct LabelStats {
    std::vector<std::string> labels;
    std::vector<std::size_t> frequency;
    std::vector<double> ratio;
    std::size_t total = 0;

    std::size_t frequency_of(std::string_view label) const;
    double ratio_of(std::string_view label) const;
};

/// Builds stats directly from label/count pairs (order preserved).
LabelStats make_label_stats(std::vector<std::string> labels, std::vector<std::size_t> frequency);

/// Throws rforge::Error("empty population") if no record passes the filter.
LabelStats compute_label_stats(const Manifest& manifest, std::optional<Source> source_filter = std::nullopt);

}  // namespace rforge
