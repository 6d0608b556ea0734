#include "spiketools/sod.hpp"

#include <cmath>
#include <stdexcept>

namespace spiketools {

UniformSignal normalize(const UniformSignal& x) {
    if (x.empty()) {
        throw std::invalid_argument("normalize: empty signal");
    }
    double peak = 0.0;
    for (double v : x.samples) {
        peak = std::max(peak, std::abs(v));
    }
    if (peak == 0.0) {
        throw std::invalid_argument("normalize: all-zero signal");
    }
    UniformSignal out = x;
    for (double& v : out.samples) {
        v /= peak;
    }
    return out;
}

UniformSignal upsample_cubic(const UniformSignal& x, int factor) {
    if (factor < 1) {
        throw std::invalid_argument("upsample_cubic: factor must be >= 1");
    }
    if (x.size() < 4) {
        throw std::invalid_argument("upsample_cubic: need at least 4 samples");
    }
    if (!(x.dt > 0.0)) {
        throw std::invalid_argument("upsample_cubic: dt must be > 0");
    }
    if (factor == 1) {
        return x;
    }

    // Natural spline: interior second derivatives m solve the tridiagonal
    // system m[i-1] + 4 m[i] + m[i+1] = 6 (y[i-1] - 2 y[i] + y[i+1]) / h^2
    // with m[0] = m[n-1] = 0.
    const std::size_t n = x.size();
    const double h = x.dt;
    std::vector<double> m(n, 0.0);
    {
        std::vector<double> diag(n - 2, 4.0);
        std::vector<double> rhs(n - 2);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            rhs[i - 1] = 6.0 * (x.samples[i - 1] - 2.0 * x.samples[i] + x.samples[i + 1]) / (h * h);
        }
        for (std::size_t i = 1; i < diag.size(); ++i) {
            const double w = 1.0 / diag[i - 1];
            diag[i] -= w;
            rhs[i] -= w * rhs[i - 1];
        }
        for (std::size_t i = diag.size(); i-- > 0;) {
            const double upper = (i + 1 < diag.size()) ? m[i + 2] : 0.0;
            m[i + 1] = (rhs[i] - upper) / diag[i];
        }
    }

    UniformSignal out;
    out.t0 = x.t0;
    out.dt = x.dt / factor;
    out.samples.resize((n - 1) * static_cast<std::size_t>(factor) + 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double y0 = x.samples[i];
        const double y1 = x.samples[i + 1];
        const double b = (y1 - y0) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0;
        const double c = m[i] / 2.0;
        const double d = (m[i + 1] - m[i]) / (6.0 * h);
        for (int j = 0; j < factor; ++j) {
            const double tau = h * static_cast<double>(j) / static_cast<double>(factor);
            out.samples[i * factor + j] = y0 + tau * (b + tau * (c + tau * d));
        }
    }
    out.samples.back() = x.samples.back();
    return out;
}

SpikeTrain sod_encode(const UniformSignal& x, const SodConfig& cfg) {
    if (!(cfg.theta_sod > 0.0)) {
        throw std::invalid_argument("sod_encode: theta_sod must be > 0");
    }
    if (x.empty()) {
        return {};
    }
    if (!(x.dt > 0.0)) {
        throw std::invalid_argument("sod_encode: dt must be > 0");
    }
    const double theta = cfg.theta_sod;
    std::vector<Spike> out;
    double ref = x.samples[0];
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = x.time_at(i);
        int burst = 0;
        while (x.samples[i] - ref >= theta) {
            out.push_back({t + burst * kSodTimeQuantum, +1.0});
            ref += theta;
            ++burst;
        }
        while (x.samples[i] - ref <= -theta) {
            out.push_back({t + burst * kSodTimeQuantum, -1.0});
            ref -= theta;
            ++burst;
        }
    }
    return SpikeTrain::from_sorted(std::move(out));
}

UniformSignal sod_reconstruct(const SpikeTrain& train, const SodConfig& cfg, double r0,
                              double t0, double dt, std::size_t n) {
    if (!(cfg.theta_sod > 0.0)) {
        throw std::invalid_argument("sod_reconstruct: theta_sod must be > 0");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("sod_reconstruct: dt must be > 0");
    }
    std::vector<double> step(n, 0.0);
    for (const Spike& s : train) {
        if (s.amplitude != 1.0 && s.amplitude != -1.0) {
            throw std::invalid_argument("sod_reconstruct: amplitudes must be +-1");
        }
        const long long idx = std::llround((s.t - t0) / dt);
        if (idx < 0 || idx >= static_cast<long long>(n)) {
            continue; // spike outside the requested grid
        }
        step[static_cast<std::size_t>(idx)] += s.amplitude;
    }
    UniformSignal out{t0, dt, std::vector<double>(n, 0.0)};
    double level = r0;
    for (std::size_t i = 0; i < n; ++i) {
        level += cfg.theta_sod * step[i];
        out.samples[i] = level;
    }
    return out;
}

} // namespace spiketools
