// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "external_objective.hpp"

#include <cerrno>
#include <csignal>
#include <cstdlib>
#include <cstring>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"
#include "rforge/error.hpp"

namespace rforge::cli {

namespace {

void write_all(int fd, const std::string& data) {
    std::size_t done = 0;
    while (done < data.size()) {
        const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw Error("objective command closed its input");
        }
        done += static_cast<std::size_t>(n);
    }
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

ExternalObjective::ExternalObjective(const std::string& command) : command_(command) {
    if (command.empty()) throw Error("objective command is empty");
    // A child that exits early must surface as an error, not kill us.
    std::signal(SIGPIPE, SIG_IGN);

    int in_pipe[2];
    int out_pipe[2];
    if (::pipe(in_pipe) != 0) throw Error("pipe failed");
    if (::pipe(out_pipe) != 0) {
        ::close(in_pipe[0]);
        ::close(in_pipe[1]);
        throw Error("pipe failed");
    }
    pid_ = ::fork();
    if (pid_ < 0) {
        for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) ::close(fd);
        throw Error("fork failed");
    }
    if (pid_ == 0) {
        ::dup2(in_pipe[0], STDIN_FILENO);
        ::dup2(out_pipe[1], STDOUT_FILENO);
        for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) ::close(fd);
        ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        ::_exit(127);
    }
    ::close(in_pipe[0]);
    ::close(out_pipe[1]);
    to_child_ = in_pipe[1];
    from_child_ = ::fdopen(out_pipe[0], "r");
    if (!from_child_) {
        ::close(out_pipe[0]);
        throw Error("fdopen failed");
    }
}

ExternalObjective::~ExternalObjective() {
    if (to_child_ >= 0) ::close(to_child_);
    if (from_child_) std::fclose(from_child_);
    if (pid_ > 0) {
        int status = 0;
        ::waitpid(pid_, &status, 0);
    }
}

double ExternalObjective::operator()(std::span<const double> candidate) {
    std::lock_guard lock(mutex_);
    nlohmann::json request = nlohmann::json::array();
    for (double v : candidate) request.push_back(v);
    write_all(to_child_, request.dump() + "\n");

    char* line = nullptr;
    std::size_t cap = 0;
    const ssize_t n = ::getline(&line, &cap, from_child_);
    std::string reply = n > 0 ? std::string(line, static_cast<std::size_t>(n)) : std::string();
    std::free(line);
    if (n <= 0) throw Error("objective command '" + command_ + "' exited without a reply");

    reply = trim(reply);
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(reply.c_str(), &end);
    if (reply.empty() || end != reply.c_str() + reply.size()) {
        throw Error("objective command replied '" + reply + "', expected a single real number");
    }
    return value;
}

}  // namespace rforge::cli
