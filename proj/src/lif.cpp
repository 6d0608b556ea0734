#include "spiketools/lif.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spiketools/metrics.hpp"

namespace spiketools {

void validate(const LifConfig& cfg) {
    if (!(cfg.theta > 0.0)) {
        throw std::invalid_argument("LifConfig: theta must be > 0");
    }
    if (!(cfg.alpha >= 0.0)) {
        throw std::invalid_argument("LifConfig: alpha must be >= 0");
    }
    if (!(cfg.t_r >= 0.0)) {
        throw std::invalid_argument("LifConfig: t_r must be >= 0");
    }
}

namespace {

// Emits one spike at the current potential and applies the reset,
// returning the spike amplitude.
double fire(double& u, double theta, ResetMode mode) {
    switch (mode) {
    case ResetMode::ToZero: {
        const double amp = std::copysign(theta, u);
        u = 0.0;
        return amp;
    }
    case ResetMode::BySubtraction: {
        const double amp = std::copysign(theta, u);
        u -= amp;
        return amp;
    }
    case ResetMode::ToMod: {
        const double amp = trunc_quantize(u, theta);
        u -= amp;
        return amp;
    }
    }
    return 0.0; // unreachable
}

std::vector<double> dirac_impulses(const HybridSignal& f) {
    const UniformSignal& base = f.base;
    std::vector<double> impulse(base.size(), 0.0);
    for (const Spike& s : f.diracs) {
        auto idx = static_cast<std::size_t>(
            std::max<long long>(0, std::llround((s.t - base.t0) / base.dt)));
        if (idx >= impulse.size()) idx = impulse.size() - 1;
        impulse[idx] += s.amplitude;
    }
    return impulse;
}

} // namespace

SpikeTrain lif_encode(const HybridSignal& f, const LifConfig& cfg) {
    validate(cfg);
    validate_hybrid(f);
    const UniformSignal& base = f.base;
    const double dt = base.dt;
    const double decay = std::exp(-cfg.alpha * dt);
    const std::vector<double> impulse = dirac_impulses(f);

    std::vector<Spike> out;
    double u = 0.0;
    double last_fire = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (i > 0) u *= decay;
        u += base.samples[i] * dt + impulse[i];
        const double t = base.time_at(i);
        if (std::abs(u) >= cfg.theta && t - last_fire >= cfg.t_r) {
            out.push_back({t, fire(u, cfg.theta, cfg.reset)});
            last_fire = t;
        }
    }
    return SpikeTrain::from_sorted(std::move(out));
}

SpikeTrain lif_encode_train(const SpikeTrain& eta, const LifConfig& cfg) {
    validate(cfg);
    std::vector<Spike> out;
    double residue = 0.0;
    double prev_t = 0.0;
    double last_fire = -std::numeric_limits<double>::infinity();
    for (const Spike& s : eta) {
        residue = oplus(residue, s.amplitude, s.t - prev_t, cfg.alpha);
        prev_t = s.t;
        if (std::abs(residue) >= cfg.theta && s.t - last_fire >= cfg.t_r) {
            out.push_back({s.t, fire(residue, cfg.theta, cfg.reset)});
            last_fire = s.t;
        }
    }
    return SpikeTrain::from_sorted(std::move(out));
}

SpikeTrain collapse_to_spikes(const HybridSignal& f, const LifConfig& cfg) {
    const SpikeTrain fired = lif_encode(f, cfg);
    const UniformSignal& base = f.base;
    const double dt = base.dt;
    const double decay = std::exp(-cfg.alpha * dt);
    const std::vector<double> impulse = dirac_impulses(f);

    std::vector<std::size_t> fire_idx;
    fire_idx.reserve(fired.size());
    for (const Spike& s : fired) {
        fire_idx.push_back(static_cast<std::size_t>(
            std::max<long long>(0, std::llround((s.t - base.t0) / dt))));
    }

    std::vector<Spike> out;
    double acc = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (i > 0) acc *= decay;
        acc += base.samples[i] * dt + impulse[i];
        if (k < fire_idx.size() && i == fire_idx[k]) {
            out.push_back({base.time_at(i), acc});
            acc = 0.0;
            ++k;
        }
    }
    if (acc != 0.0) {
        out.push_back({base.end_time(), acc});
    }
    return SpikeTrain::from_events(std::move(out));
}

} // namespace spiketools
