#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spiketools/lif.hpp"

namespace spiketools {

/// One quantization-error measurement: a random train of n_spikes with
/// amplitudes in [-amp_scale*theta, amp_scale*theta] is LIF-encoded
/// (t_r = 0) and the Alexiewicz distance between input and output is
/// recorded.
struct ErrorSample {
    ResetMode reset = ResetMode::ToMod;
    double alpha = 0.0;
    std::size_t n_spikes = 0;
    double amp_scale = 1.0;
    double error = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(const ErrorSample&, const ErrorSample&) = default;
};

struct ExperimentGrid {
    std::vector<ResetMode> resets{ResetMode::ToMod, ResetMode::BySubtraction, ResetMode::ToZero};
    std::vector<double> alphas{1.0, 0.1};
    std::vector<std::size_t> spike_counts{10, 100, 1000};
    std::vector<double> amp_scales{1.0, 1.5};
    double theta = 1.0;
    double mean_gap = 0.1; ///< mean inter-spike interval, s
};

/// Runs every grid cell `runs` times. Each run owns the derived seed
/// root_seed + linear run index, so cells can be evaluated in any order
/// (or in parallel) with identical output.
std::vector<ErrorSample> quantization_experiment(const ExperimentGrid& grid, std::size_t runs,
                                                 std::uint64_t root_seed);

/// Five-number summary with quartiles linearly interpolated between order
/// statistics. Throws std::invalid_argument on empty input.
struct BoxStats {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

BoxStats box_stats(std::vector<double> samples);

const char* to_string(ResetMode mode);

/// Parses "zero" / "subtract" / "mod"; throws std::invalid_argument.
ResetMode reset_mode_from_string(const std::string& name);

} // namespace spiketools
