// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rforge/evaluation.hpp"
#include "rforge/manifest.hpp"
#include "rforge/pipeline.hpp"
#include "rforge/progan.hpp"
#include "rforge/rebalance.hpp"
#include "rforge/sma.hpp"

using namespace rforge;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

const std::vector<std::string> kLabels{"COVID-19", "Normal", "Viral Pneumonia", "Lung Opacity"};
const std::vector<std::size_t> kFrequencies{3616, 10192, 1345, 6012};

LabelStats published_stats() { return make_label_stats(kLabels, kFrequencies); }

// 1. Complementary frequencies and injection weights.
Outcome weights_table() {
    Outcome o;
    const auto stats = published_stats();
    const auto t0 = Clock::now();
    const auto cf = rebalance::complementary_frequencies(stats);
    const auto w = rebalance::injection_weights(cf, {0.2, {}});
    const double elapsed = seconds_since(t0);
    o.require(cf.cf == std::vector<std::uint64_t>{6576, 0, 8847, 4180}, "cf 6576/8847/4180");
    const std::vector<double> full{0.3355, 0.0, 0.4513, 0.2132};
    const std::vector<double> two{0.34, 0.0, 0.45, 0.21};
    for (std::size_t i = 0; i < 4; ++i) {
        o.require(std::abs(w.weight[i] - full[i]) <= 1e-4, kLabels[i] + " weight");
        o.require(std::abs(std::round(w.weight[i] * 100) / 100 - two[i]) < 1e-12, kLabels[i] + " 2dp");
    }
    o.require(elapsed < 1e-3, "runtime < 1 ms");
    char buf[160];
    std::snprintf(buf, sizeof buf, "cf %llu/%llu/%llu, w %.4f/%.4f/%.4f, %.1f us",
                  static_cast<unsigned long long>(cf.cf[0]), static_cast<unsigned long long>(cf.cf[2]),
                  static_cast<unsigned long long>(cf.cf[3]), w.weight[0], w.weight[2], w.weight[3], elapsed * 1e6);
    o.detail << buf;
    return o;
}

// 2. Per-label ratios.
Outcome label_ratios() {
    Outcome o;
    std::vector<ManifestRecord> recs;
    for (std::size_t l = 0; l < kLabels.size(); ++l) {
        for (std::size_t i = 0; i < kFrequencies[l]; ++i) {
            recs.push_back({kLabels[l] + "-" + std::to_string(i), kLabels[l], Source::real});
        }
    }
    const auto stats = compute_label_stats(Manifest(std::move(recs)), Source::real);
    const std::vector<double> expected{0.1708, 0.4815, 0.0635, 0.2841};
    o.detail << "ratios";
    for (std::size_t i = 0; i < 4; ++i) {
        o.require(std::abs(stats.ratio_of(kLabels[i]) - expected[i]) <= 1e-4, kLabels[i]);
        char buf[32];
        std::snprintf(buf, sizeof buf, " %.4f", stats.ratio_of(kLabels[i]));
        o.detail << buf;
    }
    o.require(stats.total == 21165, "total 21165");
    o.detail << ", total " << stats.total;
    return o;
}

// Apportions target * cf[i] / sum(cf) using integer arithmetic only.
std::vector<std::uint64_t> rational_apportionment(const std::vector<std::uint64_t>& cf, std::uint64_t target) {
    const std::uint64_t total = std::accumulate(cf.begin(), cf.end(), std::uint64_t{0});
    std::vector<std::uint64_t> out(cf.size()), rem(cf.size());
    std::uint64_t given = 0;
    for (std::size_t i = 0; i < cf.size(); ++i) {
        out[i] = target * cf[i] / total;
        rem[i] = target * cf[i] % total;
        given += out[i];
    }
    std::vector<std::size_t> idx(cf.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return rem[a] != rem[b] ? rem[a] > rem[b] : cf[a] > cf[b];
    });
    for (std::size_t k = 0; given < target; ++k, ++given) ++out[idx[k]];
    return out;
}

// 3. Synthetic total and per-label counts at siir 0.20.
Outcome injection_plan() {
    Outcome o;
    const auto stats = published_stats();
    const auto plan = rebalance::plan_for(stats, {0.2, {}});
    // siir = 1/5: N_f = N_r * 1 / 4, rounded half away from zero.
    const std::uint64_t n_f = (stats.total + 2) / 4;
    const auto oracle = rational_apportionment(rebalance::complementary_frequencies(stats).cf, n_f);
    o.require(plan.n_f_total == 5291 && n_f == 5291, "N_f 5291");
    o.require(plan.per_label == std::vector<std::uint64_t>({1775, 0, 2388, 1128}), "counts 1775/2388/1128/0");
    o.require(plan.per_label == oracle, "rational oracle");
    const auto sum = std::accumulate(plan.per_label.begin(), plan.per_label.end(), std::uint64_t{0});
    o.require(sum == 5291, "sum 5291");
    o.detail << "N_f " << plan.n_f_total << ", counts " << plan.per_label[0] << "/" << plan.per_label[2] << "/"
             << plan.per_label[3] << "/" << plan.per_label[1] << ", sum " << sum;
    return o;
}

// 4. Progressive shapes and schedule constants.
Outcome progressive_shapes() {
    Outcome o;
    for (int s = 1; s <= 6; ++s) {
        const long res = 7L << (s - 1);
        const auto g = progan::builtin_generator_spec(s, false);
        const auto c = progan::builtin_critic_spec(s, false);
        const auto g_ok = progan::validate_network(g).ok;
        const auto c_ok = progan::validate_network(c).ok;
        o.require(g_ok && progan::output_shape(g) == progan::TensorShape{3, res, res},
                  "generator stage " + std::to_string(s));
        o.require(c_ok && c.input_shape == progan::TensorShape{3, res, res} &&
                      progan::output_shape(c) == progan::TensorShape{1, 1, 1},
                  "critic stage " + std::to_string(s));
    }
    const auto sched = progan::stage_schedule();
    o.require(sched.batch_size == std::array<int, 6>{256, 128, 32, 16, 16, 8}, "batch sizes");
    o.require(sched.epochs == std::array<int, 6>{250, 300, 350, 400, 450, 500}, "epochs");
    o.detail << "stages 1..6: generator 3x7x7 .. 3x224x224, critic to 1x1x1; schedule constants match";
    return o;
}

// 5. Verbatim table audit.
Outcome verbatim_audit() {
    Outcome o;
    const auto g = progan::validate_network(progan::builtin_generator_spec(6, true));
    const auto c = progan::validate_network(progan::builtin_critic_spec(6, true));
    o.require(g.findings.size() == 1, "generator has exactly one finding");
    if (g.findings.size() == 1) {
        const auto& f = g.findings[0];
        o.require(f.layer_index == 6 && f.expected_shape == progan::TensorShape{224, 28, 28} &&
                      f.declared_shape == progan::TensorShape{56, 28, 28},
                  "generator finding at layer 6, 224x28x28 vs 56x28x28");
    }
    o.require(c.findings.size() == 2, "critic has exactly two findings");
    if (c.findings.size() == 2) {
        o.require(c.findings[0].layer_index == 0 && c.findings[0].expected_shape == progan::TensorShape{14, 218, 218} &&
                      c.findings[0].declared_shape == progan::TensorShape{14, 224, 224},
                  "critic finding at layer 0");
        o.require(c.findings[1].layer_index == 17 && !c.findings[1].expected_shape &&
                      c.findings[1].declared_shape == progan::TensorShape{224, 1, 1},
                  "critic finding at layer 17");
    }
    o.detail << "generator findings " << g.findings.size() << " (layer " << (g.findings.empty() ? 0 : g.findings[0].layer_index)
             << "), critic findings " << c.findings.size();
    return o;
}

// 6. Slime mould search on the 3-D sphere.
constexpr double kSphereThreshold = 1e-4;

Outcome sma_sphere(double& shifted_median) {
    Outcome o;
    const auto t0 = Clock::now();
    std::vector<double> best;
    bool monotone = true;
    bool in_bounds = true;
    const auto run = [&](const std::function<double(std::span<const double>)>& f, std::uint64_t seed) {
        sma::SmaConfig c;
        c.population_size = 15;
        c.epochs = 250;
        c.lower_bounds = {-10, -10, -10};
        c.upper_bounds = {10, 10, 10};
        c.seed = seed;
        const auto r = sma::optimize(
            [&](std::span<const double> x) {
                for (double v : x) in_bounds = in_bounds && v >= -10 && v <= 10;
                return f(x);
            },
            c);
        for (std::size_t i = 1; i < r.history.size(); ++i) monotone = monotone && r.history[i] <= r.history[i - 1];
        return r.best_fitness;
    };
    const auto sphere = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; };
    for (std::uint64_t seed = 0; seed < 11; ++seed) best.push_back(run(sphere, seed));
    const double elapsed = seconds_since(t0);

    // Same budget with the optimum moved off the origin, reported alongside.
    std::vector<double> shifted;
    const auto moved = [](std::span<const double> x) {
        return (x[0] - 3) * (x[0] - 3) + (x[1] + 2) * (x[1] + 2) + (x[2] - 1) * (x[2] - 1);
    };
    for (std::uint64_t seed = 0; seed < 11; ++seed) shifted.push_back(run(moved, seed));
    std::sort(shifted.begin(), shifted.end());
    shifted_median = shifted[5];

    std::sort(best.begin(), best.end());
    const double median = best[5];
    o.require(median < kSphereThreshold, "median below threshold");
    o.require(monotone, "history non-increasing");
    o.require(in_bounds, "evaluations in bounds");
    o.require(elapsed < 5.0, "runtime < 5 s");
    char buf[160];
    std::snprintf(buf, sizeof buf, "median %.3g over 11 seeds (threshold %.0e), %.2f s", median, kSphereThreshold,
                  elapsed);
    o.detail << buf;
    return o;
}

// 7. Fold plans over a 21165-record manifest with synthetic records.
Outcome fold_plans() {
    Outcome o;
    std::vector<ManifestRecord> recs;
    std::map<std::string, std::string> label_of;
    std::set<std::string> real_ids;
    const auto plan = rebalance::plan_for(published_stats(), {0.2, {}});
    std::size_t n = 0;
    for (std::size_t l = 0; l < kLabels.size(); ++l) {
        for (std::size_t i = 0; i < kFrequencies[l]; ++i) {
            const std::string id = "r" + std::to_string(n++);
            recs.push_back({id, kLabels[l], Source::real});
            real_ids.insert(id);
        }
        for (std::uint64_t i = 0; i < plan.count_for(kLabels[l]); ++i) {
            recs.push_back({"s" + std::to_string(n++), kLabels[l], Source::synthetic});
        }
    }
    for (const auto& r : recs) label_of[r.id] = r.label;
    // Interleave labels so the manifest order carries no structure.
    std::shuffle(recs.begin(), recs.end(), std::mt19937_64(1));
    const Manifest manifest(std::move(recs));

    std::mt19937_64 seeds(20260101);
    std::size_t synthetic_in_test = 0;
    bool sizes_ok = true, cover_ok = true, balance_ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        const auto folds = evaluation::plan_folds(manifest, 10, 0.15, seeds(), plan);
        std::multiset<std::size_t> sizes;
        std::set<std::string> covered;
        std::size_t test_total = 0;
        std::map<std::string, std::vector<std::size_t>> per_label;
        for (const auto& f : folds.folds) {
            sizes.insert(f.test.size());
            std::map<std::string, std::size_t> here;
            for (const auto& id : f.test) {
                if (!real_ids.count(id)) ++synthetic_in_test;
                covered.insert(id);
                ++here[label_of[id]];
            }
            test_total += f.test.size();
            for (const auto& l : kLabels) per_label[l].push_back(here[l]);
        }
        sizes_ok = sizes_ok && sizes.count(2117) == 5 && sizes.count(2116) == 5;
        cover_ok = cover_ok && test_total == real_ids.size() && covered == real_ids;
        for (const auto& [l, v] : per_label) {
            balance_ok = balance_ok && *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end()) <= 1;
        }
    }
    o.require(sizes_ok, "test sizes 2117x5 + 2116x5");
    o.require(cover_ok, "tests disjoint and covering");
    o.require(balance_ok, "per-label balance within 1");
    o.require(synthetic_in_test == 0, "no synthetic ids in test");
    o.detail << "100 seeds, " << manifest.size() << " records (" << real_ids.size() << " real), synthetic in test "
             << synthetic_in_test;
    return o;
}

// 8. Metrics against per-class brute force.
Outcome metrics_oracle() {
    Outcome o;
    std::mt19937_64 rng(88);
    const std::vector<std::string> pool{"A", "B", "C", "D"};
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t k = 1 + rng() % 4;
        const std::vector<std::string> labels(pool.begin(), pool.begin() + static_cast<long>(k));
        const std::size_t n = 1 + rng() % 200;
        std::vector<std::string> truth(n), pred(n);
        for (std::size_t i = 0; i < n; ++i) {
            truth[i] = labels[rng() % k];
            pred[i] = labels[rng() % k];
        }
        const auto got = evaluation::metric_values(
            evaluation::metrics_from_confusion(evaluation::confusion_matrix(truth, pred, labels)));
        std::array<double, 5> want{};  // recall, specificity, f1, precision, accuracy
        double correct = 0;
        for (std::size_t i = 0; i < n; ++i) correct += truth[i] == pred[i];
        for (const auto& l : labels) {
            double tp = 0, fp = 0, fn = 0, tn = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const bool a = truth[i] == l, b = pred[i] == l;
                tp += a && b;
                fp += !a && b;
                fn += a && !b;
                tn += !a && !b;
            }
            const double rec = tp + fn > 0 ? tp / (tp + fn) : 0;
            const double spe = tn + fp > 0 ? tn / (tn + fp) : 0;
            const double pre = tp + fp > 0 ? tp / (tp + fp) : 0;
            want[0] += rec / static_cast<double>(k);
            want[1] += spe / static_cast<double>(k);
            want[2] += (pre + rec > 0 ? 2 * pre * rec / (pre + rec) : 0) / static_cast<double>(k);
            want[3] += pre / static_cast<double>(k);
        }
        want[4] = correct / static_cast<double>(n);
        for (std::size_t m = 0; m < 5; ++m) worst = std::max(worst, std::abs(got[m] - want[m]));
    }
    o.require(worst <= 1e-12, "agreement within 1e-12");

    bool diag_ok = true;
    // A single label has no negatives, so specificity is undefined there.
    for (int t = 0; t < 50; ++t) {
        const std::size_t k = 2 + rng() % 3;
        evaluation::ConfusionMatrix cm(std::vector<std::string>(pool.begin(), pool.begin() + static_cast<long>(k)));
        for (std::size_t i = 0; i < k; ++i) cm.at(i, i) = 1 + rng() % 50;
        for (double v : evaluation::metric_values(evaluation::metrics_from_confusion(cm))) diag_ok = diag_ok && v == 1.0;
    }
    o.require(diag_ok, "diagonal matrices (2..4 labels) score 1");
    char buf[96];
    std::snprintf(buf, sizeof buf, "1000 random sets, max deviation %.2e", worst);
    o.detail << buf;
    return o;
}

// 9. Desk-scale end-to-end comparison.
Outcome toy_pipeline() {
    Outcome o;
    const auto t0 = Clock::now();
    std::vector<double> tuned, baseline;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        pipeline::ToyRunConfig c;
        c.seed = seed;
        const auto r = pipeline::run_toy(c);
        tuned.push_back(r.tuned.metric("f1").mean);
        baseline.push_back(r.baseline.metric("f1").mean);
    }
    const double elapsed = seconds_since(t0);
    std::sort(tuned.begin(), tuned.end());
    std::sort(baseline.begin(), baseline.end());
    o.require(tuned[2] >= baseline[2], "tuned median macro-F1 >= baseline median");
    o.require(elapsed < 60.0, "runtime < 60 s");
    char buf[128];
    std::snprintf(buf, sizeof buf, "median macro-F1 tuned %.4f vs baseline %.4f over 5 seeds, %.1f s", tuned[2],
                  baseline[2], elapsed);
    o.detail << buf;
    return o;
}

// 10. WGAN-GP loss.
Outcome wgan_loss() {
    Outcome o;
    const auto zero = progan::wgan_gp_loss({0}, {0}, {1}, 10);
    o.require(zero.critic_loss == 0 && zero.generator_loss == 0, "all-zero case");
    const auto ex = progan::wgan_gp_loss({2, 4}, {1, 1}, {1, 1}, 10);
    o.require(ex.critic_loss == -2 && ex.generator_loss == -1, "critic -2, generator -1");
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-3, 3);
    bool plain = true;
    for (int t = 0; t < 100; ++t) {
        std::vector<double> real(1 + rng() % 8), fake(1 + rng() % 8), norms(1 + rng() % 8);
        for (auto* v : {&real, &fake, &norms}) {
            for (auto& x : *v) x = u(rng);
        }
        const double w = std::accumulate(fake.begin(), fake.end(), 0.0) / static_cast<double>(fake.size()) -
                         std::accumulate(real.begin(), real.end(), 0.0) / static_cast<double>(real.size());
        plain = plain && progan::wgan_gp_loss(real, fake, norms, 0).critic_loss == w;
    }
    o.require(plain, "lambda 0 gives the plain Wasserstein estimate");
    o.detail << "examples exact; lambda 0 matches mean(fake) - mean(real) on 100 random draws";
    return o;
}

}  // namespace

int main() {
    double shifted_median = 0.0;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"complementary frequencies and injection weights", weights_table},
        {"label ratios", label_ratios},
        {"synthetic total and per-label counts", injection_plan},
        {"progressive shape contract and schedule", progressive_shapes},
        {"verbatim table audit", verbatim_audit},
        {"slime mould sphere convergence", [&] { return sma_sphere(shifted_median); }},
        {"fold plan invariants", fold_plans},
        {"metrics oracle equivalence", metrics_oracle},
        {"toy pipeline: tuned + injection vs baseline", toy_pipeline},
        {"WGAN-GP loss", wgan_loss},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        std::printf("%s  %2zu  %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.str().c_str());
        if (i == 5) std::printf("      note: shifted sphere (optimum at (3,-2,1)) median %.3g\n", shifted_median);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
