// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "rforge/sma.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

#include "rforge/error.hpp"

namespace rforge::sma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Ranks by fitness ascending; non-finite values compare as worst, ties keep
// population order.
std::vector<std::size_t> rank_order(std::span<const Candidate> population) {
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto key = [&](std::size_t i) {
        const double f = population[i].fitness;
        return std::isfinite(f) ? f : kInf;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    return order;
}

void evaluate_all(const Objective& objective, const SmaConfig& config, std::vector<Candidate>& population,
                  OptimizationResult& result) {
    const std::size_t n = population.size();
    std::vector<double> values(n, 0.0);
    const auto eval_one = [&](std::size_t i) {
        std::vector<double> x(config.dimensions());
        for (std::size_t d = 0; d < x.size(); ++d) x[d] = config.to_objective(d, population[i].position[d]);
        values[i] = objective(x);
    };

    const std::size_t workers = std::min(config.threads, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) eval_one(i);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        for (std::size_t i = w; i < n; i += workers) eval_one(i);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        double f = values[i];
        if (!std::isfinite(f)) {
            ++result.non_finite_evaluations;
            if (result.warnings.size() < 32) {
                result.warnings.push_back("objective returned " + std::to_string(f) + " at evaluation " +
                                          std::to_string(result.evaluations + i) + "; ranked worst");
            }
            f = kInf;
        }
        population[i].fitness = f;
    }
    result.evaluations += n;
}

}  // namespace

double SmaConfig::search_lower(std::size_t dim) const {
    return scale(dim) == Scale::log ? std::log10(lower_bounds[dim]) : lower_bounds[dim];
}

double SmaConfig::search_upper(std::size_t dim) const {
    return scale(dim) == Scale::log ? std::log10(upper_bounds[dim]) : upper_bounds[dim];
}

double SmaConfig::to_objective(std::size_t dim, double search_value) const {
    if (scale(dim) == Scale::linear) return search_value;
    return std::clamp(std::pow(10.0, search_value), lower_bounds[dim], upper_bounds[dim]);
}

void SmaConfig::validate() const {
    if (population_size < 2) throw Error("population_size must be at least 2");
    if (epochs < 1) throw Error("epochs must be at least 1");
    if (lower_bounds.empty()) throw Error("bounds must have at least one dimension");
    if (lower_bounds.size() != upper_bounds.size()) throw Error("lower and upper bounds differ in dimension");
    if (!scales.empty() && scales.size() != lower_bounds.size()) throw Error("scales differ in dimension from bounds");
    if (!(z >= 0.0 && z <= 1.0)) throw Error("z must lie in [0, 1]");
    if (threads < 1) throw Error("threads must be at least 1");
    for (std::size_t d = 0; d < lower_bounds.size(); ++d) {
        const double lo = lower_bounds[d];
        const double hi = upper_bounds[d];
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
            throw Error("dimension " + std::to_string(d) + ": lower bound must be below upper bound");
        }
        if (scale(d) == Scale::log && !(lo > 0.0)) {
            throw Error("dimension " + std::to_string(d) + ": log scale needs positive bounds");
        }
    }
}

SmaConfig SmaConfig::hyperparameter_defaults() {
    SmaConfig config;
    config.population_size = 15;
    config.epochs = 250;
    config.lower_bounds = {1e-5, 0.05, 0.0};
    config.upper_bounds = {1e-3, 0.25, 0.5};
    config.scales = {Scale::log, Scale::linear, Scale::linear};
    return config;
}

std::vector<double> fitness_weights(std::span<const double> sorted_fitnesses, RandomStream& rng) {
    const std::size_t n = sorted_fitnesses.size();
    if (n < 2) throw Error("fitness_weights needs at least two fitnesses");

    const double best = sorted_fitnesses.front();
    double worst = best;
    for (double f : sorted_fitnesses) {
        if (std::isfinite(f)) worst = std::max(worst, f);
    }
    const double spread = best - worst;

    std::vector<double> weights(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rng.uniform();
        const double f = sorted_fitnesses[i];
        double ratio = 0.0;
        if (!std::isfinite(f)) {
            ratio = 1.0;
        } else if (spread != 0.0) {
            ratio = (best - f) / spread;
        }
        const double term = r * std::log10(ratio + 1.0);
        weights[i] = (2 * (i + 1) <= n) ? 1.0 + term : 1.0 - term;
    }
    return weights;
}

std::vector<Candidate> sma_step(std::span<const Candidate> population, const Candidate& best, std::size_t t,
                                const SmaConfig& config, RandomStream& rng) {
    const std::size_t n = population.size();
    const std::size_t dims = config.dimensions();
    if (n < 2) throw Error("sma_step needs at least two agents");
    if (t < 1 || t > config.epochs) throw Error("epoch index out of range");

    const auto order = rank_order(population);
    std::vector<double> sorted(n);
    for (std::size_t k = 0; k < n; ++k) sorted[k] = population[order[k]].fitness;

    // weight[i * dims + d] for agent i (population order).
    std::vector<double> weight(n * dims, 1.0);
    for (std::size_t d = 0; d < dims; ++d) {
        const auto w = fitness_weights(sorted, rng);
        for (std::size_t k = 0; k < n; ++k) weight[order[k] * dims + d] = w[k];
    }

    const double progress = static_cast<double>(t) / static_cast<double>(config.epochs);
    const double a = std::atanh(1.0 - progress);
    const double b = 1.0 - progress;
    const double best_fitness = best.fitness;

    std::vector<Candidate> next(population.begin(), population.end());
    for (std::size_t i = 0; i < n; ++i) {
        auto& x = next[i].position;
        if (rng.uniform() < config.z) {
            for (std::size_t d = 0; d < dims; ++d) {
                x[d] = rng.uniform(config.search_lower(d), config.search_upper(d));
            }
            continue;
        }
        const double fi = population[i].fitness;
        const double p = std::isfinite(fi) ? std::tanh(std::abs(fi - best_fitness)) : 1.0;
        for (std::size_t d = 0; d < dims; ++d) {
            const double vb = rng.uniform(-a, a);
            const double vc = rng.uniform(-b, b);
            const double r = rng.uniform();
            const std::size_t agent_a = rng.index(n);
            const std::size_t agent_b = rng.index(n);
            double value;
            if (r < p) {
                value = best.position[d] + vb * (weight[i * dims + d] * population[agent_a].position[d] -
                                                 population[agent_b].position[d]);
            } else {
                value = vc * population[i].position[d];
            }
            x[d] = std::clamp(value, config.search_lower(d), config.search_upper(d));
        }
    }
    return next;
}

OptimizationResult optimize(const Objective& objective, const SmaConfig& config) {
    config.validate();
    if (!objective) throw Error("objective is empty");
    const std::size_t n = config.population_size;
    const std::size_t dims = config.dimensions();

    SeededStream rng(config.seed);
    OptimizationResult result;
    result.history.reserve(config.epochs);

    std::vector<Candidate> population(n);
    for (auto& c : population) {
        c.position.resize(dims);
        for (std::size_t d = 0; d < dims; ++d) {
            c.position[d] = rng.uniform(config.search_lower(d), config.search_upper(d));
        }
    }
    evaluate_all(objective, config, population, result);

    const auto better = [](const Candidate& c, double incumbent) {
        return c.fitness < incumbent;
    };
    Candidate best = population[rank_order(population).front()];

    for (std::size_t t = 1; t <= config.epochs; ++t) {
        population = sma_step(population, best, t, config, rng);
        evaluate_all(objective, config, population, result);
        for (const auto& c : population) {
            if (better(c, best.fitness)) best = c;
        }
        result.history.push_back(best.fitness);
    }

    result.best_fitness = best.fitness;
    result.best_position.resize(dims);
    for (std::size_t d = 0; d < dims; ++d) result.best_position[d] = config.to_objective(d, best.position[d]);
    return result;
}

}  // namespace rforge::sma
