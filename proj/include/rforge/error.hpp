// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <stdexcept>
#include <string>

namespace rforge {

/// Raised for every domain-level failure (bad input, violated precondition).
/// The CLI maps it to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input file could not be parsed. `row` is 1-based and counts the header.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row)
        : Error(what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

}  // namespace rforge
