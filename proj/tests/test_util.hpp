// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace rforge::testing {

// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("rforge-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// The four-label chest X-ray table: label order and counts as published.
inline const std::vector<std::pair<std::string, std::size_t>>& cxr_counts() {
    static const std::vector<std::pair<std::string, std::size_t>> counts{
        {"COVID-19", 3616}, {"Normal", 10192}, {"Viral Pneumonia", 1345}, {"Lung Opacity", 6012}};
    return counts;
}

// Manifest CSV text with the given real counts, labels interleaved in a
// seeded order so that first appearance still follows `counts`.
inline std::string manifest_csv(const std::vector<std::pair<std::string, std::size_t>>& counts,
                                std::size_t synthetic_per_label = 0) {
    std::ostringstream out;
    out << "id,label,source\n";
    std::size_t n = 0;
    for (const auto& [label, c] : counts) {
        for (std::size_t i = 0; i < c; ++i) out << "r" << n++ << ',' << label << ",real\n";
    }
    for (const auto& [label, c] : counts) {
        (void)c;
        for (std::size_t i = 0; i < synthetic_per_label; ++i) out << "s" << n++ << ',' << label << ",synthetic\n";
    }
    return out.str();
}

}  // namespace rforge::testing
