#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "spiketools/metrics.hpp"
#include "spiketools/types.hpp"

using namespace spiketools;

namespace {

// Brute-force oracles, kept independent of the library implementations.

double weyl_brute(const std::vector<double>& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double sum = 0.0;
        for (std::size_t j = i; j < a.size(); ++j) {
            sum += a[j];
            best = std::max(best, std::abs(sum));
        }
    }
    return best;
}

double alexiewicz_brute(const SpikeTrain& train, double alpha) {
    double best = 0.0;
    const auto& sp = train.spikes();
    for (std::size_t n = 0; n < sp.size(); ++n) {
        double sum = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            sum += std::exp(-alpha * (sp[n].t - sp[k].t)) * sp[k].amplitude;
        }
        best = std::max(best, std::abs(sum));
    }
    return best;
}

SpikeTrain random_train(std::mt19937_64& rng, std::size_t max_len, double amp_range) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_real_distribution<double> amp(-amp_range, amp_range);
    std::uniform_real_distribution<double> gap(0.01, 1.0);
    std::vector<Spike> spikes;
    double t = 0.0;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
        t += gap(rng);
        double a = amp(rng);
        if (a == 0.0) a = amp_range;
        spikes.push_back({t, a});
    }
    return SpikeTrain::from_sorted(std::move(spikes));
}

} // namespace

TEST_CASE("spike train construction merges and sorts") {
    auto train = SpikeTrain::from_events({{2.0, 1.0}, {1.0, 0.5}, {2.0, -0.25}});
    REQUIRE(train.size() == 2);
    CHECK(train[0] == Spike{1.0, 0.5});
    CHECK(train[1] == Spike{2.0, 0.75});

    auto cancelled = SpikeTrain::from_events({{1.0, 1.0}, {1.0, -1.0}});
    CHECK(cancelled.empty());

    CHECK_THROWS_AS(SpikeTrain::from_events({{-1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SpikeTrain::from_sorted({{1.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SpikeTrain::from_sorted({{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("oplus basics") {
    CHECK(oplus(1.0, 1.0, 0.0, 0.0) == 2.0);
    CHECK(oplus(1.0, 1.0, 123.5, 0.0) == 2.0);
    CHECK(oplus(1.0, 1.0, 1.0, std::log(2.0)) == doctest::Approx(1.5).epsilon(1e-14));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double x = u(rng);
        CHECK(oplus(0.0, x, std::abs(u(rng)), std::abs(u(rng))) == x);
    }
}

TEST_CASE("oplus left-fold equals the direct leak-weighted sum") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 100; ++rep) {
        const SpikeTrain train = random_train(rng, 50, 2.0);
        const double alpha = rep % 3 == 0 ? 0.0 : std::uniform_real_distribution<double>(0.0, 3.0)(rng);
        double folded = 0.0;
        double prev_t = 0.0;
        for (const Spike& s : train) {
            folded = oplus(folded, s.amplitude, s.t - prev_t, alpha);
            prev_t = s.t;
        }
        double direct = 0.0;
        if (!train.empty()) {
            const double t_n = train.back().t;
            for (const Spike& s : train) {
                direct += std::exp(-alpha * (t_n - s.t)) * s.amplitude;
            }
        }
        CHECK(folded == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("trunc_quantize examples") {
    CHECK(trunc_quantize(1.8, 1.0) == 1.0);
    CHECK(trunc_quantize(-1.8, 1.0) == -1.0);
    CHECK(trunc_quantize(0.5, 1.0) == 0.0);
    CHECK_THROWS_AS(trunc_quantize(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(trunc_quantize(1.0, -0.5), std::invalid_argument);
}

TEST_CASE("trunc_quantize residual lies strictly inside (-theta, theta)") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> z(-50.0, 50.0);
    std::uniform_real_distribution<double> th(0.05, 4.0);
    for (int i = 0; i < 2000; ++i) {
        const double theta = th(rng);
        const double value = z(rng);
        const double q = trunc_quantize(value, theta);
        CHECK(std::abs(value - q) < theta);
        CHECK(std::round(q / theta) == doctest::Approx(q / theta).epsilon(1e-9));
    }
}

TEST_CASE("trunc_quantize is exact on theta multiples") {
    const double theta = 0.3; // 3*0.3 rounds below 0.9; the quantizer must not lose a level
    for (int n = -5; n <= 5; ++n) {
        const double z = n * theta;
        CHECK(trunc_quantize(z, theta) == z);
    }
}

TEST_CASE("alexiewicz norm examples") {
    const auto train = SpikeTrain::from_sorted({{1.0, 1.0}, {2.0, 1.0}, {3.0, -3.0}});
    CHECK(alexiewicz_norm(train, 0.0) == 2.0); // prefix sums 1, 2, -1
    CHECK(alexiewicz_norm(SpikeTrain{}, 0.0) == 0.0);
    CHECK(alexiewicz_norm(SpikeTrain{}, 2.0) == 0.0);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 20; ++i) {
        double s = u(rng);
        if (s == 0.0) s = 1.0;
        const auto single = SpikeTrain::from_sorted({{std::abs(u(rng)), s}});
        CHECK(alexiewicz_norm(single, std::abs(u(rng))) == std::abs(s));
    }
}

TEST_CASE("alexiewicz norm matches the brute-force oracle") {
    std::mt19937_64 rng(19);
    for (int rep = 0; rep < 300; ++rep) {
        const SpikeTrain train = random_train(rng, 60, 3.0);
        for (double alpha : {0.0, 0.3, 2.0}) {
            const double fast = alexiewicz_norm(train, alpha);
            const double brute = alexiewicz_brute(train, alpha);
            CHECK(fast == doctest::Approx(brute).epsilon(1e-12));
        }
    }
}

TEST_CASE("alexiewicz distance examples") {
    const auto a = SpikeTrain::from_sorted({{1.0, 1.0}});
    const auto b = SpikeTrain::from_sorted({{2.0, 1.0}});
    CHECK(alexiewicz_distance(a, a, 0.0) == 0.0);
    CHECK(alexiewicz_distance(a, a, 1.7) == 0.0);
    CHECK(alexiewicz_distance(a, b, 0.0) == 1.0); // difference prefixes 1, 0

    const auto c = SpikeTrain::from_sorted({{1.0, 2.0}});
    const auto d = SpikeTrain::from_sorted({{1.0, 1.0}});
    CHECK(alexiewicz_distance(c, d, 0.0) == 1.0); // coincident times subtract
}

TEST_CASE("alexiewicz distance is a metric on random triples") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 100; ++rep) {
        const SpikeTrain a = random_train(rng, 30, 2.0);
        const SpikeTrain b = random_train(rng, 30, 2.0);
        const SpikeTrain c = random_train(rng, 30, 2.0);
        for (double alpha : {0.0, 0.5}) {
            const double ab = alexiewicz_distance(a, b, alpha);
            const double ba = alexiewicz_distance(b, a, alpha);
            CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
            const double ac = alexiewicz_distance(a, c, alpha);
            const double bc = alexiewicz_distance(b, c, alpha);
            CHECK(ac <= ab + bc + 1e-12);
        }
    }
}

TEST_CASE("weyl discrepancy examples") {
    CHECK(weyl_discrepancy(std::vector<double>{}) == 0.0);
    CHECK(weyl_discrepancy(std::vector<double>{1.0, -1.0, 1.0, 1.0}) == 2.0);
    CHECK(weyl_discrepancy(std::vector<double>{1.0, 1.0, 1.0}) == 3.0);
}

TEST_CASE("weyl discrepancy equals the O(n^2) brute force") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<std::size_t> len(0, 80);
    std::uniform_real_distribution<double> amp(-2.0, 2.0);
    for (int rep = 0; rep < 300; ++rep) {
        std::vector<double> a(len(rng));
        for (double& v : a) v = amp(rng);
        CHECK(weyl_discrepancy(a) == doctest::Approx(weyl_brute(a)).epsilon(1e-12));
    }
}

TEST_CASE("err_trajectory is zero for a perfect encoding of nothing") {
    HybridSignal f;
    f.base = {0.0, 0.01, std::vector<double>(101, 0.0)};
    const UniformSignal err = err_trajectory(f, SpikeTrain{}, 0.7);
    for (double v : err.samples) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("err_trajectory of a single quantized Dirac") {
    // f carries a Dirac of 2.5 at t=1; the encoding kept 2 of it, so the
    // running error integrates the difference train (-0.5 at t=1).
    HybridSignal f;
    f.base = {0.0, 0.01, std::vector<double>(201, 0.0)};
    f.diracs = SpikeTrain::from_sorted({{1.0, 2.5}});
    const auto train = SpikeTrain::from_sorted({{1.0, 2.0}});
    const UniformSignal err = err_trajectory(f, train, 0.0);
    CHECK(err.samples[99] == 0.0);
    CHECK(err.samples[100] == -0.5);
    CHECK(err.samples[200] == -0.5);
    CHECK(std::abs(err.samples[200]) == 0.5);
}

TEST_CASE("err_trajectory peak magnitude equals the Alexiewicz distance for Dirac-only inputs") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> amp(-2.0, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        UniformSignal base{0.0, 0.01, std::vector<double>(501, 0.0)};
        std::uniform_int_distribution<std::size_t> pick(1, base.size() - 1);
        std::vector<Spike> fd;
        std::vector<Spike> td;
        for (int k = 0; k < 8; ++k) {
            double a = amp(rng);
            if (a == 0.0) a = 1.0;
            fd.push_back({base.time_at(pick(rng)), a});
            a = amp(rng);
            if (a == 0.0) a = 1.0;
            td.push_back({base.time_at(pick(rng)), a});
        }
        HybridSignal f{base, SpikeTrain::from_events(fd)};
        const SpikeTrain train = SpikeTrain::from_events(td);
        for (double alpha : {0.0, 0.8}) {
            const UniformSignal err = err_trajectory(f, train, alpha);
            double peak = 0.0;
            for (double v : err.samples) peak = std::max(peak, std::abs(v));
            const double dist = alexiewicz_distance(train, f.diracs, alpha);
            CHECK(peak == doctest::Approx(dist).epsilon(1e-10));
        }
    }
}

TEST_CASE("err_trajectory rejects mismatched spans") {
    HybridSignal f;
    f.base = {0.0, 0.01, std::vector<double>(11, 0.0)};
    const auto outside = SpikeTrain::from_sorted({{5.0, 1.0}});
    CHECK_THROWS_AS(err_trajectory(f, outside, 0.0), std::invalid_argument);
}
