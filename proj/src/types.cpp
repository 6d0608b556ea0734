#include "spiketools/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spiketools {

namespace {

void check_event(const Spike& s) {
    if (!std::isfinite(s.t) || s.t < 0.0) {
        throw std::invalid_argument("SpikeTrain: spike times must be finite and >= 0");
    }
    if (!std::isfinite(s.amplitude)) {
        throw std::invalid_argument("SpikeTrain: spike amplitudes must be finite");
    }
}

} // namespace

SpikeTrain SpikeTrain::from_events(std::vector<Spike> events) {
    for (const Spike& s : events) {
        check_event(s);
    }
    std::sort(events.begin(), events.end(),
              [](const Spike& a, const Spike& b) { return a.t < b.t; });
    std::vector<Spike> merged;
    merged.reserve(events.size());
    for (const Spike& s : events) {
        if (!merged.empty() && merged.back().t == s.t) {
            merged.back().amplitude += s.amplitude;
            if (merged.back().amplitude == 0.0) {
                merged.pop_back();
            }
        } else if (s.amplitude != 0.0) {
            merged.push_back(s);
        }
    }
    return SpikeTrain(std::move(merged));
}

SpikeTrain SpikeTrain::from_sorted(std::vector<Spike> events) {
    for (std::size_t i = 0; i < events.size(); ++i) {
        check_event(events[i]);
        if (events[i].amplitude == 0.0) {
            throw std::invalid_argument("SpikeTrain: zero amplitude spike");
        }
        if (i > 0 && !(events[i - 1].t < events[i].t)) {
            throw std::invalid_argument("SpikeTrain: times not strictly increasing");
        }
    }
    return SpikeTrain(std::move(events));
}

void validate_hybrid(const HybridSignal& f) {
    if (!(f.base.dt > 0.0)) {
        throw std::invalid_argument("HybridSignal: dt must be > 0");
    }
    if (f.base.empty()) {
        throw std::invalid_argument("HybridSignal: base signal has no samples");
    }
    for (double v : f.base.samples) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("HybridSignal: non-finite sample");
        }
    }
    const double t_end = f.base.end_time();
    for (const Spike& s : f.diracs) {
        if (!(s.t > f.base.t0) || s.t > t_end) {
            throw std::invalid_argument("HybridSignal: Dirac time outside (t0, end]");
        }
    }
}

} // namespace spiketools
