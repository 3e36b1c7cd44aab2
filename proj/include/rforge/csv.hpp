// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rforge::csv {

/// Splits one CSV line (RFC 4180 quoting, no embedded newlines).
std::vector<std::string> split_line(std::string_view line);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    /// 1-based file row of each data row (the header is row 1).
    std::vector<std::size_t> row_numbers;
};

/// Reads a whole file. Strips a UTF-8 BOM and CR line endings, skips blank
/// lines (row numbering still counts them). Throws rforge::Error if unreadable.
Table read_file(const std::filesystem::path& path);

std::string quote_if_needed(std::string_view field);

}  // namespace rforge::csv
