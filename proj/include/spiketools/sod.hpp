#pragma once

#include "spiketools/types.hpp"

namespace spiketools {

struct SodConfig {
    double theta_sod = 0.05; ///< amplitude threshold in normalized units, > 0
};

/// Time separation between spikes emitted within one sample (1 ns); keeps
/// spike times strictly increasing when a sample crosses several levels.
inline constexpr double kSodTimeQuantum = 1e-9;

/// Scales the signal by 1/max|x| so the output spans [-1, 1] with at least
/// one sample at +-1. No offset is removed. Throws std::invalid_argument
/// for an empty or all-zero signal.
UniformSignal normalize(const UniformSignal& x);

/// Natural cubic-spline interpolation onto a grid `factor` times finer.
/// The output passes exactly through every input sample; boundary second
/// derivatives are zero. Requires at least 4 samples and factor >= 1.
UniformSignal upsample_cubic(const UniformSignal& x, int factor);

/// Send-on-delta encoding: tracks a reference level (initialized to the
/// first sample) and emits a +1 (-1) unit spike each time the sample
/// exceeds the reference by +theta_sod (-theta_sod), stepping the
/// reference by one threshold per spike. Several crossings within one
/// sample emit several unit spikes separated by kSodTimeQuantum.
SpikeTrain sod_encode(const UniformSignal& x, const SodConfig& cfg);

/// Staircase decoder: value at a grid point is r0 + theta_sod * (sum of
/// spike amplitudes assigned to grid points up to and including it); each
/// spike is assigned to its nearest grid point. Amplitudes must be +-1.
UniformSignal sod_reconstruct(const SpikeTrain& train, const SodConfig& cfg, double r0,
                              double t0, double dt, std::size_t n);

} // namespace spiketools
