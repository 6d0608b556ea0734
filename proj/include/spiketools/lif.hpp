#pragma once

#include "spiketools/types.hpp"

namespace spiketools {

/// Potential re-initialization applied when the threshold is reached.
enum class ResetMode {
    ToZero,        ///< potential drops to zero, spike carries sgn(u)*theta
    BySubtraction, ///< one theta is subtracted, the residue carries over
    ToMod,         ///< the full integer multiple of theta is removed at once
};

struct LifConfig {
    double theta = 1.0;                  ///< firing threshold, > 0
    double alpha = 0.0;                  ///< leak rate in 1/s, >= 0
    double t_r = 0.0;                    ///< refractory time in s, >= 0
    ResetMode reset = ResetMode::ToMod;
};

/// Validates parameter ranges; throws std::invalid_argument.
void validate(const LifConfig& cfg);

/// Discrete-time LIF encoding of a hybrid signal. Per grid step the
/// potential decays by exp(-alpha*dt), accumulates sample*dt, and absorbs
/// Diracs assigned to their nearest grid index. A spike is emitted at the
/// step time whenever |u| >= theta and the refractory window has elapsed;
/// BySubtraction removes at most one theta per step (the residue may
/// re-trigger on the next step), ToMod removes the full multiple at once.
/// Input is integrated during the refractory window, only triggering is
/// suppressed.
SpikeTrain lif_encode(const HybridSignal& f, const LifConfig& cfg);

/// Event-driven LIF encoding of a pure spike train: the residue decays
/// between events, absorbs each incoming amplitude, and fires at the event
/// time when it reaches the threshold. With t_r = 0 this equals lif_encode
/// applied to the Dirac-only hybrid signal in the limit dt -> 0.
SpikeTrain lif_encode_train(const SpikeTrain& eta, const LifConfig& cfg);

/// Dirac-only surrogate of f: runs lif_encode to obtain the firing times
/// t_k, then returns the train of leak-weighted integrals of f accumulated
/// between consecutive firing times (a trailing event at the end of the
/// grid collects any unspent mass). Encoding the surrogate reproduces
/// lif_encode(f).
SpikeTrain collapse_to_spikes(const HybridSignal& f, const LifConfig& cfg);

} // namespace spiketools
