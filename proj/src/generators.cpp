#include "spiketools/generators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace spiketools {

SpikeTrain gen_random_train(std::size_t n, double amp_lo, double amp_hi, double mean_gap,
                            std::uint64_t seed) {
    if (!(amp_lo < amp_hi)) {
        throw std::invalid_argument("gen_random_train: need amp_lo < amp_hi");
    }
    if (!(mean_gap > 0.0)) {
        throw std::invalid_argument("gen_random_train: mean_gap must be > 0");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(amp_lo, amp_hi);
    std::exponential_distribution<double> gap(1.0 / mean_gap);

    std::vector<Spike> spikes;
    spikes.reserve(n);
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double g = gap(rng);
        while (!(g > 0.0)) {
            g = gap(rng);
        }
        t += g;
        double a = amp(rng);
        while (a == 0.0) {
            a = amp(rng);
        }
        spikes.push_back({t, a});
    }
    return SpikeTrain::from_sorted(std::move(spikes));
}

HybridSignal gen_wave_with_diracs(std::uint64_t seed, double duration, double dt) {
    if (!(duration > 0.0) || !(dt > 0.0) || duration <= dt) {
        throw std::invalid_argument("gen_wave_with_diracs: need duration > dt > 0");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> n_waves(2, 4);
    std::uniform_int_distribution<int> n_diracs(3, 10);
    std::uniform_real_distribution<double> wave_amp(0.2, 1.0);
    std::uniform_real_distribution<double> wave_freq(0.2, 2.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> dirac_amp(-1.5, 1.5);

    struct Wave {
        double a, f, p;
    };
    std::vector<Wave> waves(static_cast<std::size_t>(n_waves(rng)));
    for (Wave& w : waves) {
        w = {wave_amp(rng), wave_freq(rng), phase(rng)};
    }

    HybridSignal out;
    out.base.t0 = 0.0;
    out.base.dt = dt;
    const auto n = static_cast<std::size_t>(std::llround(duration / dt)) + 1;
    out.base.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = out.base.time_at(i);
        double v = 0.0;
        for (const Wave& w : waves) {
            v += w.a * std::sin(2.0 * M_PI * w.f * t + w.p);
        }
        out.base.samples[i] = v;
    }

    const double t_end = out.base.end_time();
    std::uniform_real_distribution<double> dirac_t(dt * (1.0 + 1e-9), t_end);
    std::vector<Spike> diracs(static_cast<std::size_t>(n_diracs(rng)));
    for (Spike& s : diracs) {
        double a = dirac_amp(rng);
        while (std::abs(a) < 0.05) {
            a = dirac_amp(rng);
        }
        s = {dirac_t(rng), a};
    }
    out.diracs = SpikeTrain::from_events(std::move(diracs));
    return out;
}

namespace {

struct Bump {
    double offset; ///< seconds relative to the R center
    double amp;
    double sigma;
};

// P-QRS-T morphology placed around each R center.
constexpr Bump kEcgBumps[] = {
    {-0.200, 0.15, 0.025}, // P
    {-0.022, -0.10, 0.010}, // Q
    {0.000, 1.00, 0.012},   // R
    {0.022, -0.15, 0.010},  // S
    {0.250, 0.35, 0.050},   // T
};

} // namespace

SyntheticEcg gen_synthetic_ecg(double heart_rate_bpm, double duration, double fs) {
    if (!(heart_rate_bpm >= 30.0 && heart_rate_bpm <= 220.0)) {
        throw std::invalid_argument("gen_synthetic_ecg: heart rate must be in [30, 220] bpm");
    }
    if (!(duration > 0.0) || !(fs > 0.0)) {
        throw std::invalid_argument("gen_synthetic_ecg: duration and fs must be > 0");
    }
    SyntheticEcg out;
    out.signal.t0 = 0.0;
    out.signal.dt = 1.0 / fs;
    const auto n = static_cast<std::size_t>(std::llround(duration * fs)) + 1;
    out.signal.samples.assign(n, 0.0);

    const double period = 60.0 / heart_rate_bpm;
    for (double beat = 0.5; beat < duration; beat += period) {
        out.beat_times.push_back(beat);
        for (const Bump& bump : kEcgBumps) {
            const double center = beat + bump.offset;
            const auto lo = static_cast<long long>(std::floor((center - 4.0 * bump.sigma) * fs));
            const auto hi = static_cast<long long>(std::ceil((center + 4.0 * bump.sigma) * fs));
            for (long long i = std::max(0LL, lo); i <= hi && i < static_cast<long long>(n); ++i) {
                const double t = out.signal.time_at(static_cast<std::size_t>(i));
                const double z = (t - center) / bump.sigma;
                out.signal.samples[static_cast<std::size_t>(i)] += bump.amp * std::exp(-0.5 * z * z);
            }
        }
    }
    return out;
}

} // namespace spiketools
