#pragma once

#include <cstddef>
#include <vector>

namespace spiketools {

/// One weighted Dirac event. Inside a valid SpikeTrain the amplitude is
/// never zero and the time is non-negative.
struct Spike {
    double t = 0.0;
    double amplitude = 0.0;

    friend bool operator==(const Spike&, const Spike&) = default;
};

/// Finite train of weighted Dirac events with strictly increasing times.
/// Events sharing a time stamp are merged by summing their amplitudes;
/// events whose (merged) amplitude is zero are dropped.
class SpikeTrain {
public:
    SpikeTrain() = default;

    /// Builds a train from arbitrary events: sorts by time, merges
    /// coincident events, drops zero amplitudes. Throws
    /// std::invalid_argument on negative or non-finite times/amplitudes.
    static SpikeTrain from_events(std::vector<Spike> events);

    /// Builds a train from events already strictly increasing in time.
    /// Throws std::invalid_argument if the ordering or amplitude
    /// invariants are violated.
    static SpikeTrain from_sorted(std::vector<Spike> events);

    const std::vector<Spike>& spikes() const { return spikes_; }
    std::size_t size() const { return spikes_.size(); }
    bool empty() const { return spikes_.empty(); }
    const Spike& operator[](std::size_t i) const { return spikes_[i]; }
    const Spike& front() const { return spikes_.front(); }
    const Spike& back() const { return spikes_.back(); }

    auto begin() const { return spikes_.begin(); }
    auto end() const { return spikes_.end(); }

    friend bool operator==(const SpikeTrain&, const SpikeTrain&) = default;

private:
    explicit SpikeTrain(std::vector<Spike> spikes) : spikes_(std::move(spikes)) {}

    std::vector<Spike> spikes_;
};

/// Equidistantly sampled signal: samples[i] holds the value at t0 + i*dt.
struct UniformSignal {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    double time_at(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
    /// Time of the last sample (t0 for an empty signal).
    double end_time() const { return samples.empty() ? t0 : time_at(samples.size() - 1); }

    friend bool operator==(const UniformSignal&, const UniformSignal&) = default;
};

/// Uniformly sampled base signal with superimposed Dirac pulses. Dirac
/// times lie strictly after t0 (so the initial condition "no mass at the
/// origin" holds) and no later than the final sample time.
struct HybridSignal {
    UniformSignal base;
    SpikeTrain diracs;
};

/// Checks the HybridSignal invariants (positive dt, non-empty base,
/// finite samples, Dirac times in (t0, end]); throws std::invalid_argument.
void validate_hybrid(const HybridSignal& f);

} // namespace spiketools
