#include "spiketools/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spiketools/generators.hpp"
#include "spiketools/metrics.hpp"

namespace spiketools {

std::vector<ErrorSample> quantization_experiment(const ExperimentGrid& grid, std::size_t runs,
                                                 std::uint64_t root_seed) {
    if (runs < 1) {
        throw std::invalid_argument("quantization_experiment: runs must be >= 1");
    }
    if (!(grid.theta > 0.0)) {
        throw std::invalid_argument("quantization_experiment: theta must be > 0");
    }
    std::vector<ErrorSample> out;
    out.reserve(grid.resets.size() * grid.alphas.size() * grid.spike_counts.size() *
                grid.amp_scales.size() * runs);
    std::uint64_t index = 0;
    for (ResetMode reset : grid.resets) {
        for (double alpha : grid.alphas) {
            for (std::size_t n : grid.spike_counts) {
                for (double scale : grid.amp_scales) {
                    for (std::size_t run = 0; run < runs; ++run, ++index) {
                        const std::uint64_t seed = root_seed + index;
                        const SpikeTrain train = gen_random_train(
                            n, -scale * grid.theta, scale * grid.theta, grid.mean_gap, seed);
                        const LifConfig cfg{grid.theta, alpha, 0.0, reset};
                        const SpikeTrain encoded = lif_encode_train(train, cfg);
                        out.push_back({reset, alpha, n, scale,
                                       alexiewicz_distance(train, encoded, alpha), seed});
                    }
                }
            }
        }
    }
    return out;
}

BoxStats box_stats(std::vector<double> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("box_stats: empty input");
    }
    std::sort(samples.begin(), samples.end());
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(samples.size() - 1);
        const auto lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, samples.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return samples[lo] + frac * (samples[hi] - samples[lo]);
    };
    return {samples.front(), quantile(0.25), quantile(0.5), quantile(0.75), samples.back()};
}

const char* to_string(ResetMode mode) {
    switch (mode) {
    case ResetMode::ToZero:
        return "zero";
    case ResetMode::BySubtraction:
        return "subtract";
    case ResetMode::ToMod:
        return "mod";
    }
    return "?";
}

ResetMode reset_mode_from_string(const std::string& name) {
    if (name == "zero") return ResetMode::ToZero;
    if (name == "subtract") return ResetMode::BySubtraction;
    if (name == "mod") return ResetMode::ToMod;
    throw std::invalid_argument("unknown reset mode '" + name + "' (use zero|subtract|mod)");
}

} // namespace spiketools
