#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "spiketools/experiment.hpp"
#include "spiketools/matching.hpp"

using namespace spiketools;

namespace {

std::vector<double> random_times(std::mt19937_64& rng, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_real_distribution<double> gap(0.05, 1.5);
    std::vector<double> t(len(rng));
    double acc = 0.0;
    for (double& v : t) {
        acc += gap(rng);
        v = acc;
    }
    return t;
}

} // namespace

TEST_CASE("match_detections on identical sequences") {
    const std::vector<double> beats{1.0, 2.0, 3.5, 7.25};
    const MatchResult m = match_detections(beats, beats, 0.15);
    CHECK(m.tp == 4);
    CHECK(m.fn == 0);
    CHECK(m.fp == 0);
}

TEST_CASE("one detection between two beats pairs with the nearer one") {
    const std::vector<double> beats{1.0, 1.2};
    const std::vector<double> dets{1.09};
    const MatchResult m = match_detections(dets, beats, 0.15);
    CHECK(m.tp == 1);
    CHECK(m.fn == 1);
    CHECK(m.fp == 0);
}

TEST_CASE("empty detections leave every beat unmatched") {
    const std::vector<double> beats{1.0, 2.0, 3.0};
    const MatchResult m = match_detections({}, beats, 0.15);
    CHECK(m.tp == 0);
    CHECK(m.fn == 3);
    CHECK(m.pp == 0);
}

TEST_CASE("matching accounting identities hold on random inputs") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        const auto beats = random_times(rng, 50);
        const auto dets = random_times(rng, 50);
        const MatchResult m = match_detections(dets, beats, 0.2);
        CHECK(m.p == m.tp + m.fn);
        CHECK(m.pp == m.tp + m.fp);
        CHECK(m.tp <= m.p);
        CHECK(m.tp <= m.pp);
    }
}

TEST_CASE("swapping the inputs swaps fn and fp but keeps tp") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 200; ++rep) {
        const auto beats = random_times(rng, 40);
        const auto dets = random_times(rng, 40);
        const MatchResult ab = match_detections(dets, beats, 0.3);
        const MatchResult ba = match_detections(beats, dets, 0.3);
        CHECK(ab.tp == ba.tp);
        CHECK(ab.fn == ba.fp);
        CHECK(ab.fp == ba.fn);
    }
}

TEST_CASE("increasing the tolerance never decreases tp") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 100; ++rep) {
        const auto beats = random_times(rng, 40);
        const auto dets = random_times(rng, 40);
        std::size_t prev = 0;
        for (double tol : {0.05, 0.1, 0.2, 0.4, 0.8}) {
            const MatchResult m = match_detections(dets, beats, tol);
            CHECK(m.tp >= prev);
            prev = m.tp;
        }
    }
}

TEST_CASE("tpr_ppv arithmetic and undefined metrics") {
    const MatchResult m{9, 1, 3, 10, 12};
    const DetectionScores s = tpr_ppv(m);
    CHECK(s.tpr.value() == doctest::Approx(0.9));
    CHECK(s.ppv.value() == doctest::Approx(0.75));

    const DetectionScores perfect = tpr_ppv({5, 0, 0, 5, 5});
    CHECK(perfect.tpr.value() == 1.0);
    CHECK(perfect.ppv.value() == 1.0);

    const DetectionScores undefined = tpr_ppv({0, 0, 0, 0, 0});
    CHECK(!undefined.tpr.has_value());
    CHECK(!undefined.ppv.has_value());
}

TEST_CASE("box_stats examples and oracle") {
    const BoxStats five = box_stats({1.0, 2.0, 3.0, 4.0, 5.0});
    CHECK(five.min == 1.0);
    CHECK(five.q1 == 2.0);
    CHECK(five.median == 3.0);
    CHECK(five.q3 == 4.0);
    CHECK(five.max == 5.0);

    const BoxStats single = box_stats({2.5});
    CHECK(single.min == 2.5);
    CHECK(single.q1 == 2.5);
    CHECK(single.median == 2.5);
    CHECK(single.q3 == 2.5);
    CHECK(single.max == 2.5);

    CHECK_THROWS_AS(box_stats({}), std::invalid_argument);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> data(1 + rng() % 200);
        for (double& v : data) v = val(rng);
        const BoxStats st = box_stats(data);
        std::sort(data.begin(), data.end());
        auto quantile = [&](double q) {
            const double pos = q * static_cast<double>(data.size() - 1);
            const auto lo = static_cast<std::size_t>(pos);
            const std::size_t hi = std::min(lo + 1, data.size() - 1);
            return data[lo] + (pos - lo) * (data[hi] - data[lo]);
        };
        CHECK(st.min == data.front());
        CHECK(st.max == data.back());
        CHECK(st.q1 == doctest::Approx(quantile(0.25)).epsilon(1e-12));
        CHECK(st.median == doctest::Approx(quantile(0.5)).epsilon(1e-12));
        CHECK(st.q3 == doctest::Approx(quantile(0.75)).epsilon(1e-12));
    }
}

TEST_CASE("quantization experiment is deterministic under the seed") {
    ExperimentGrid grid;
    grid.spike_counts = {10, 50};
    const auto a = quantization_experiment(grid, 5, 99);
    const auto b = quantization_experiment(grid, 5, 99);
    CHECK(a == b);
    CHECK(a.size() == grid.resets.size() * grid.alphas.size() * 2 * grid.amp_scales.size() * 5);
}

TEST_CASE("reset-to-mod errors stay below theta across the experiment grid") {
    ExperimentGrid grid;
    grid.resets = {ResetMode::ToMod};
    grid.spike_counts = {10, 100};
    for (const ErrorSample& s : quantization_experiment(grid, 20, 1)) {
        CHECK(s.error < grid.theta);
    }
}

TEST_CASE("sub-threshold amplitudes give identical mod and subtraction samples") {
    ExperimentGrid grid;
    grid.amp_scales = {1.0};
    grid.spike_counts = {100};
    grid.resets = {ResetMode::ToMod};
    const auto mod = quantization_experiment(grid, 20, 5);
    grid.resets = {ResetMode::BySubtraction};
    const auto sub = quantization_experiment(grid, 20, 5);
    REQUIRE(mod.size() == sub.size());
    for (std::size_t i = 0; i < mod.size(); ++i) {
        CHECK(mod[i].error == sub[i].error);
        CHECK(mod[i].seed == sub[i].seed);
    }
}

TEST_CASE("above-threshold amplitudes break the bound for reset-to-zero") {
    ExperimentGrid grid;
    grid.resets = {ResetMode::ToZero};
    grid.alphas = {0.1};
    grid.spike_counts = {1000};
    grid.amp_scales = {1.5};
    const auto samples = quantization_experiment(grid, 100, 2024);
    CHECK(std::any_of(samples.begin(), samples.end(),
                      [&](const ErrorSample& s) { return s.error >= grid.theta; }));
}

TEST_CASE("concentration of measure: the median reset-to-mod error grows with n") {
    ExperimentGrid grid;
    grid.resets = {ResetMode::ToMod};
    grid.alphas = {0.1};
    grid.amp_scales = {1.0};
    double prev_median = 0.0;
    for (std::size_t n : {std::size_t{10}, std::size_t{100}, std::size_t{1000}}) {
        grid.spike_counts = {n};
        std::vector<double> errors;
        for (const ErrorSample& s : quantization_experiment(grid, 100, 31)) {
            errors.push_back(s.error);
        }
        const double median = box_stats(errors).median;
        CHECK(median >= prev_median);
        prev_median = median;
    }
}

TEST_CASE("reset mode names round-trip") {
    for (ResetMode mode : {ResetMode::ToZero, ResetMode::BySubtraction, ResetMode::ToMod}) {
        CHECK(reset_mode_from_string(to_string(mode)) == mode);
    }
    CHECK_THROWS_AS(reset_mode_from_string("bogus"), std::invalid_argument);
}
