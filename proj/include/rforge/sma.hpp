// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rforge/random.hpp"

// Slime Mould Algorithm: bounded, derivative-free minimization.
//
// Each epoch the population is ranked by fitness and every agent either
// restarts uniformly in the box (probability z), approaches the best-so-far
// position through a fitness-weighted difference of two random agents, or
// contracts toward the origin by a factor that anneals from 1 to 0.

namespace rforge::sma {

enum class Scale { linear, log };

struct SmaConfig {
    std::size_t population_size = 15;
    std::size_t epochs = 250;
    std::vector<double> lower_bounds;
    std::vector<double> upper_bounds;
    /// Per-dimension search scale; empty means all linear. A log dimension is
    /// searched over log10 of its bounds and exponentiated before evaluation.
    std::vector<Scale> scales;
    /// Restart probability.
    double z = 0.03;
    std::uint64_t seed = 0;
    /// Worker threads for objective evaluation within an epoch. Results are
    /// reduced in candidate order, so the run is identical for any value.
    std::size_t threads = 1;

    std::size_t dimensions() const noexcept { return lower_bounds.size(); }
    Scale scale(std::size_t dim) const noexcept { return scales.empty() ? Scale::linear : scales[dim]; }

    /// Lower/upper bound in search coordinates (log10 for log dimensions).
    double search_lower(std::size_t dim) const;
    double search_upper(std::size_t dim) const;
    /// Search coordinate -> objective coordinate.
    double to_objective(std::size_t dim, double search_value) const;

    /// Throws rforge::Error describing the first violated constraint.
    void validate() const;

    /// Population 15, 250 epochs, targets [learning rate, dropout, siir] with
    /// bounds [1e-5, 0.05, 0] .. [1e-3, 0.25, 0.5]; learning rate on log scale.
    static SmaConfig hyperparameter_defaults();
};

/// Agent in search coordinates.
struct Candidate {
    std::vector<double> position;
    double fitness = 0.0;
};

struct OptimizationResult {
    /// Objective coordinates.
    std::vector<double> best_position;
    double best_fitness = 0.0;
    /// Best-so-far fitness after each epoch.
    std::vector<double> history;
    std::size_t evaluations = 0;
    std::size_t non_finite_evaluations = 0;
    std::vector<std::string> warnings;
};

/// Must be reentrant when SmaConfig::threads > 1.
using Objective = std::function<double(std::span<const double>)>;

/// Oscillation weights for fitnesses sorted ascending (best first).
/// Draws exactly one variate per entry. For rank i (0-based) with
/// ratio = (best - f[i]) / (best - worst):
///   W = 1 + r * log10(ratio + 1)   if i + 1 <= n / 2
///   W = 1 - r * log10(ratio + 1)   otherwise
/// A flat list yields all ones; non-finite entries use ratio 1.
std::vector<double> fitness_weights(std::span<const double> sorted_fitnesses, RandomStream& rng);

/// One position update at epoch t (1-based, t <= epochs). `best` is the
/// best-so-far agent. Returned candidates carry new positions and the fitness
/// of the agent they were moved from (to be re-evaluated by the caller).
///
/// Draw order: fitness_weights once per dimension over the ranked population;
/// then per agent (population order) one restart variate, followed either by
/// one variate per dimension (restart) or, per dimension, vb, vc, r, A, B.
std::vector<Candidate> sma_step(std::span<const Candidate> population, const Candidate& best, std::size_t t,
                                const SmaConfig& config, RandomStream& rng);

/// Runs the full optimization; deterministic for a fixed config.seed.
OptimizationResult optimize(const Objective& objective, const SmaConfig& config);

}  // namespace rforge::sma
