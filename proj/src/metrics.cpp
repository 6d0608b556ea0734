#include "spiketools/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spiketools {

double oplus(double a, double b, double gap, double alpha) {
    return std::exp(-alpha * gap) * a + b;
}

double trunc_quantize(double z, double theta) {
    if (!(theta > 0.0)) {
        throw std::invalid_argument("trunc_quantize: theta must be > 0");
    }
    const double ratio = std::abs(z) / theta;
    double n = std::floor(ratio);
    const double nearest = std::round(ratio);
    if (nearest > n && nearest - ratio <= 1e-12 * std::max(ratio, 1.0)) {
        n = nearest;
    }
    return std::copysign(n * theta, z);
}

double alexiewicz_norm(const SpikeTrain& train, double alpha) {
    double acc = 0.0;
    double best = 0.0;
    double prev_t = 0.0;
    for (const Spike& s : train) {
        acc = oplus(acc, s.amplitude, s.t - prev_t, alpha);
        prev_t = s.t;
        best = std::max(best, std::abs(acc));
    }
    return best;
}

double alexiewicz_distance(const SpikeTrain& a, const SpikeTrain& b, double alpha) {
    std::vector<Spike> merged;
    merged.reserve(a.size() + b.size());
    merged.insert(merged.end(), a.begin(), a.end());
    for (const Spike& s : b) {
        merged.push_back({s.t, -s.amplitude});
    }
    return alexiewicz_norm(SpikeTrain::from_events(std::move(merged)), alpha);
}

double weyl_discrepancy(std::span<const double> amplitudes) {
    double prefix = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    for (double a : amplitudes) {
        prefix += a;
        lo = std::min(lo, prefix);
        hi = std::max(hi, prefix);
    }
    return hi - lo;
}

UniformSignal err_trajectory(const HybridSignal& f, const SpikeTrain& train, double alpha) {
    validate_hybrid(f);
    const UniformSignal& base = f.base;
    if (!train.empty() &&
        (train.front().t < base.t0 || train.back().t > base.end_time())) {
        throw std::invalid_argument("err_trajectory: train extends outside the signal span");
    }

    const std::size_t n = base.size();
    const double dt = base.dt;
    std::vector<double> impulse(n, 0.0);
    auto deposit = [&](const SpikeTrain& tr, double sign) {
        for (const Spike& s : tr) {
            auto idx = static_cast<std::size_t>(
                std::max<long long>(0, std::llround((s.t - base.t0) / dt)));
            if (idx >= n) idx = n - 1;
            impulse[idx] += sign * s.amplitude;
        }
    };
    deposit(train, +1.0);
    deposit(f.diracs, -1.0);

    const double decay = std::exp(-alpha * dt);
    UniformSignal err{base.t0, dt, std::vector<double>(n, 0.0)};
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) acc *= decay;
        acc += impulse[i] - base.samples[i] * dt;
        err.samples[i] = acc;
    }
    return err;
}

} // namespace spiketools
