// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "rforge/error.hpp"
#include "rforge/evaluation.hpp"
#include "rforge/pipeline.hpp"
#include "rforge/toy.hpp"
#include "test_util.hpp"

using namespace rforge;
using namespace rforge::toy;

namespace {

ToyDatasetConfig two_blobs(std::size_t a, std::size_t b, double separation, std::uint64_t seed) {
    ToyDatasetConfig c;
    c.counts = {{"A", a}, {"B", b}};
    c.feature_dim = 4;
    c.separation = separation;
    c.seed = seed;
    return c;
}

double accuracy(const LogisticModel& m, const Dataset& d) {
    double ok = 0;
    for (const auto& r : d) ok += m.predict(r.features) == r.label;
    return ok / static_cast<double>(d.size());
}

}  // namespace

TEST(ToyDataset, CountsAndDeterminism) {
    const auto d = generate_toy_dataset(two_blobs(400, 50, 1.5, 3));
    ASSERT_EQ(d.size(), 450u);
    std::map<std::string, std::size_t> counts;
    for (const auto& r : d) {
        ++counts[r.label];
        EXPECT_EQ(r.source, Source::real);
        EXPECT_EQ(r.features.size(), 4u);
    }
    EXPECT_EQ(counts["A"], 400u);
    EXPECT_EQ(counts["B"], 50u);
    const auto again = generate_toy_dataset(two_blobs(400, 50, 1.5, 3));
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(d[i].features, again[i].features);
}

TEST(ToyDataset, ConfigValidation) {
    EXPECT_THROW(generate_toy_dataset(two_blobs(400, 5, 1.0, 0)), Error);
    ToyDatasetConfig one;
    one.counts = {{"A", 50}};
    EXPECT_THROW(one.validate(), Error);
    EXPECT_NO_THROW(ToyDatasetConfig::cxr_scaled().validate());
}

TEST(ToyDataset, ZeroSeparationCollapsesToMajority) {
    const auto train = generate_toy_dataset(two_blobs(900, 100, 0.0, 1));
    const auto test = generate_toy_dataset(two_blobs(900, 100, 0.0, 2));
    const auto r = train_classifier(train, test, {1e-2, 0.0, 0.0}, 30, 64, 4);
    EXPECT_NEAR(accuracy(r.model, test), 0.9, 0.02);
}

TEST(ToyDataset, FeatureCsvRoundTrip) {
    rforge::testing::TempDir dir;
    auto d = generate_toy_dataset(two_blobs(12, 10, 1.0, 5));
    d[0].source = Source::synthetic;
    save_features_csv(d, dir / "f.csv");
    const auto back = load_features_csv(dir / "f.csv");
    ASSERT_EQ(back.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        EXPECT_EQ(back[i].id, d[i].id);
        EXPECT_EQ(back[i].source, d[i].source);
        EXPECT_EQ(back[i].features, d[i].features);
    }
}

TEST(Synthesizer, ConstantFeaturesAndMidpoint) {
    Dataset d{{"a", "X", Source::real, {2.0, -1.0}}, {"b", "X", Source::real, {2.0, 3.0}}};
    const auto s = fit_synthesizer(d, "X");
    EXPECT_EQ(s.mean, (std::vector<double>{2.0, 1.0}));
    EXPECT_EQ(s.variance[0], kVarianceFloor);
    EXPECT_DOUBLE_EQ(s.variance[1], 8.0);
    EXPECT_THROW(fit_synthesizer({d[0]}, "X"), Error);
}

TEST(Synthesizer, FittedMeanWithinStandardError) {
    const auto d = generate_toy_dataset(two_blobs(5000, 20, 2.0, 9));
    const auto s = fit_synthesizer(d, "A");
    // Class A has mean 2 * e_0 and unit variance.
    const double bound = 3.0 / std::sqrt(5000.0);
    EXPECT_NEAR(s.mean[0], 2.0, bound);
    for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(s.mean[k], 0.0, bound);
}

TEST(Synthesizer, SamplesAreSyntheticSeededAndCentred) {
    GaussianSynthesizer s{"X", {1.0, -2.0}, {4.0, 0.25}};
    EXPECT_TRUE(sample_synthetic(s, 0, 1).empty());
    const auto a = sample_synthetic(s, 10000, 7);
    const auto b = sample_synthetic(s, 10000, 7);
    ASSERT_EQ(a.size(), 10000u);
    double m0 = 0, m1 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].source, Source::synthetic);
        EXPECT_EQ(a[i].label, "X");
        EXPECT_EQ(a[i].features, b[i].features);
        m0 += a[i].features[0];
        m1 += a[i].features[1];
    }
    EXPECT_NEAR(m0 / 10000, 1.0, 3 * 2.0 / 100);
    EXPECT_NEAR(m1 / 10000, -2.0, 3 * 0.5 / 100);
}

TEST(Classifier, ZeroLearningRateKeepsUntrainedLoss) {
    const auto d = generate_toy_dataset(two_blobs(60, 40, 1.0, 2));
    const auto r = train_classifier(d, d, {0.0, 0.0, 0.0}, 3, 16, 1);
    LogisticModel untrained({"A", "B"}, 4);
    EXPECT_DOUBLE_EQ(r.val_loss, cross_entropy(untrained, d));
    EXPECT_NEAR(r.val_loss, std::log(2.0), 1e-12);
}

TEST(Classifier, SeparableBlobsAreLearned) {
    const auto train = generate_toy_dataset(two_blobs(300, 300, 6.0, 1));
    const auto val = generate_toy_dataset(two_blobs(200, 200, 6.0, 2));
    const auto r = train_classifier(train, val, {1e-2, 0.0, 0.0}, 200, 32, 3);
    EXPECT_FALSE(r.diverged);
    EXPECT_GT(accuracy(r.model, val), 0.95);
}

TEST(Classifier, HeavyDropoutDoesNotBeatNoDropout) {
    const auto train = generate_toy_dataset(two_blobs(300, 100, 2.0, 1));
    const auto val = generate_toy_dataset(two_blobs(150, 50, 2.0, 2));
    const auto plain = train_classifier(train, val, {1e-2, 0.0, 0.0}, 30, 32, 5);
    const auto heavy = train_classifier(train, val, {1e-2, 0.99, 0.0}, 30, 32, 5);
    EXPECT_GE(heavy.val_loss, plain.val_loss);
}

TEST(Classifier, DivergenceReturnsInfinity) {
    auto d = generate_toy_dataset(two_blobs(50, 50, 1.0, 2));
    for (auto& r : d) {
        for (auto& x : r.features) x *= 1e200;
    }
    const auto r = train_classifier(d, d, {1e3, 0.0, 0.0}, 5, 10, 1);
    EXPECT_TRUE(r.diverged);
    EXPECT_TRUE(std::isinf(r.val_loss));
    EXPECT_FALSE(r.warnings.empty());
}

class ToyPipeline : public ::testing::Test {
protected:
    void SetUp() override {
        ToyDatasetConfig c;
        c.counts = {{"A", 200}, {"B", 60}, {"C", 30}};
        c.seed = 11;
        data = generate_toy_dataset(c);
        folds = evaluation::plan_folds(to_manifest(data), 5, 0.15, 3);
        split = resolve_fold(data, folds.folds[0]);
    }
    Dataset data;
    evaluation::FoldPlan folds;
    FoldSplit split;
    ObjectiveOptions options{{15, 128, 21}, 0.15};
};

TEST_F(ToyPipeline, ZeroRatioEqualsRealOnlyTraining) {
    const Hyperparameters hp{1e-3, 0.1, 0.0};
    const double obj = pipeline_objective(split, hp, options);
    const auto injected = inject_synthetic(split, 0.0, 0.15, derive_seed(21, 0));
    EXPECT_EQ(injected.train.size(), split.train.size());
    EXPECT_EQ(injected.val.size(), split.val.size());
    const auto direct = train_classifier(split.train, split.val, hp, 15, 128, 21);
    EXPECT_EQ(obj, direct.val_loss);
}

TEST_F(ToyPipeline, DeterministicAndFiniteAtReferenceValues) {
    const auto hp = Hyperparameters::optimized_reference();
    const double a = pipeline_objective(data, folds.folds[0], hp, options);
    const double b = pipeline_objective(data, folds.folds[0], hp, options);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(std::isfinite(a));
}

TEST_F(ToyPipeline, InjectionFulfilsPlanAndNeverTouchesTest) {
    const auto injected = inject_synthetic(split, 0.2, 0.15, 4);
    std::map<std::string, std::uint64_t> synth;
    std::size_t n_synth = 0;
    for (const auto* part : {&injected.train, &injected.val}) {
        for (const auto& r : *part) {
            if (r.source == Source::synthetic) {
                ++synth[r.label];
                ++n_synth;
            }
        }
    }
    EXPECT_EQ(n_synth, injected.plan.n_f_total);
    for (std::size_t i = 0; i < injected.plan.labels.size(); ++i) {
        EXPECT_EQ(synth[injected.plan.labels[i]], injected.plan.per_label[i]);
    }
    std::set<std::string> test_ids;
    for (const auto& r : split.test) {
        EXPECT_EQ(r.source, Source::real);
        test_ids.insert(r.id);
    }
    for (const auto& r : injected.train) EXPECT_FALSE(test_ids.count(r.id));
    for (const auto& r : injected.val) EXPECT_FALSE(test_ids.count(r.id));
}

TEST_F(ToyPipeline, SyntheticInTestIsRejected) {
    auto bad = data;
    bad.push_back({"syn-x", "A", Source::synthetic, std::vector<double>(8, 0.0)});
    auto fold = folds.folds[0];
    fold.test.push_back("syn-x");
    EXPECT_THROW(resolve_fold(bad, fold), Error);
    fold.test.back() = "missing";
    EXPECT_THROW(resolve_fold(data, fold), Error);
}

TEST(ToyRun, SmallEndToEndRunIsReproducible) {
    pipeline::ToyRunConfig c;
    c.dataset.counts = {{"A", 150}, {"B", 40}, {"C", 25}};
    c.k = 3;
    c.search.population_size = 4;
    c.search.epochs = 3;
    c.seed = 5;
    const auto a = pipeline::run_toy(c);
    const auto b = pipeline::run_toy(c);
    EXPECT_EQ(a.search.history, b.search.history);
    EXPECT_EQ(a.tuned.metric("f1").mean, b.tuned.metric("f1").mean);
    EXPECT_EQ(a.records, 215u);
    EXPECT_EQ(a.tuned.fold_reports.size(), 3u);
    EXPECT_EQ(a.search.evaluations, 4u * 4u);
}

TEST(ToyRun, WeightedInjectionDoesNotLowerMedianMacroF1) {
    std::vector<double> injected, plain;
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto cfg = ToyDatasetConfig::cxr_scaled();
        cfg.seed = derive_seed(s, 0);
        const auto data = generate_toy_dataset(cfg);
        const auto folds = evaluation::plan_folds(to_manifest(data), 5, 0.15, derive_seed(s, 1));
        const ObjectiveOptions o{{15, 128, derive_seed(s, 2)}, 0.15};
        injected.push_back(pipeline::cross_validate(data, folds, {1e-4, 0.15, 0.2}, o).metric("f1").mean);
        plain.push_back(pipeline::cross_validate(data, folds, {1e-4, 0.15, 0.0}, o).metric("f1").mean);
    }
    std::sort(injected.begin(), injected.end());
    std::sort(plain.begin(), plain.end());
    EXPECT_GE(injected[2], plain[2]);
}
