#pragma once

#include <span>

#include "spiketools/types.hpp"

namespace spiketools {

/// Leak-aware aggregation of two amplitudes separated by `gap` seconds:
/// exp(-alpha*gap)*a + b. Left-folding a train with this operation yields
/// the leak-weighted sum of all amplitudes evaluated at the last event.
double oplus(double a, double b, double gap, double alpha);

/// Truncation quantizer: the largest-magnitude multiple of theta that does
/// not exceed z in magnitude, so the residual z - q lies strictly inside
/// (-theta, theta). Ratios z/theta within one part in 1e12 of an integer
/// are treated as exact, which keeps re-quantizing theta-multiples stable.
/// Throws std::invalid_argument for theta <= 0.
double trunc_quantize(double z, double theta);

/// Weighted Alexiewicz norm of a spike train: the supremum over horizons T
/// of |integral of exp(-alpha (T - t)) against the train|. For pure spike
/// trains the supremum is attained at spike times, so the norm is the
/// maximum leak-weighted prefix magnitude. Empty train has norm 0.
double alexiewicz_norm(const SpikeTrain& train, double alpha);

/// Alexiewicz distance between two trains: the norm of the merged
/// difference train a - b (coincident times cancel by summation).
double alexiewicz_distance(const SpikeTrain& a, const SpikeTrain& b, double alpha);

/// Maximum magnitude of any contiguous partial sum of the sequence,
/// computed in O(n) as max(prefix) - min(prefix) over prefix sums that
/// include the empty prefix 0.
double weyl_discrepancy(std::span<const double> amplitudes);

/// Running quantization error err(T) = integral over [0, T] of
/// exp(-alpha (T - t)) * (train - f), evaluated on f's sample grid by
/// exponential recursive accumulation. Dirac events (of both the train and
/// f) are assigned to their nearest grid step. Throws std::invalid_argument
/// when the train extends outside f's time span.
UniformSignal err_trajectory(const HybridSignal& f, const SpikeTrain& train, double alpha);

} // namespace spiketools
