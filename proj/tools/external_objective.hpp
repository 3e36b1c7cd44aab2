// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdio>
#include <mutex>
#include <span>
#include <string>

#include <sys/types.h>

namespace rforge::cli {

// Long-lived child process (`/bin/sh -c command`) that scores candidates. Each
// request is one JSON array line on the child's stdin; the reply is one line
// holding a single real number.
class ExternalObjective {
public:
    explicit ExternalObjective(const std::string& command);
    ~ExternalObjective();

    ExternalObjective(const ExternalObjective&) = delete;
    ExternalObjective& operator=(const ExternalObjective&) = delete;

    /// Thread-safe; requests are serialized.
    double operator()(std::span<const double> candidate);

private:
    std::string command_;
    pid_t pid_ = -1;
    int to_child_ = -1;
    std::FILE* from_child_ = nullptr;
    std::mutex mutex_;
};

}  // namespace rforge::cli
