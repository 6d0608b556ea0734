#pragma once

#include <cstdint>
#include <vector>

#include "spiketools/types.hpp"

namespace spiketools {

/// n spikes with i.i.d. uniform amplitudes in [amp_lo, amp_hi] (exact-zero
/// draws rejected) and exponential inter-spike gaps with the given mean;
/// the first gap starts at t = 0 so all times are positive. Deterministic
/// under the seed.
SpikeTrain gen_random_train(std::size_t n, double amp_lo, double amp_hi, double mean_gap,
                            std::uint64_t seed);

/// Sum of 2-4 random sinusoids on [0, duration] with 3-10 superimposed
/// Dirac pulses at times in (dt, duration). Deterministic under the seed.
HybridSignal gen_wave_with_diracs(std::uint64_t seed, double duration, double dt = 0.01);

struct SyntheticEcg {
    UniformSignal signal;
    std::vector<double> beat_times; ///< exact R-bump centers
};

/// Periodic Gaussian-bump P-QRS-T template with known R times; requires
/// 30 <= heart_rate_bpm <= 220.
SyntheticEcg gen_synthetic_ecg(double heart_rate_bpm, double duration, double fs = 360.0);

} // namespace spiketools
