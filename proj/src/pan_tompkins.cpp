#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include "spiketools/qrs.hpp"

namespace spiketools {

namespace {

using cd = std::complex<double>;

// Expands prod (x - r_k) into monic polynomial coefficients, highest
// degree first.
std::vector<cd> poly_from_roots(const std::vector<cd>& roots) {
    std::vector<cd> c{1.0};
    for (const cd& r : roots) {
        c.push_back(0.0);
        for (std::size_t i = c.size() - 1; i >= 1; --i) {
            c[i] -= r * c[i - 1];
        }
    }
    return c;
}

} // namespace

IirFilter butter_bandpass(double lo_hz, double hi_hz, double fs, int pole_pairs) {
    if (!(0.0 < lo_hz && lo_hz < hi_hz && hi_hz < 0.5 * fs)) {
        throw std::invalid_argument("butter_bandpass: need 0 < lo < hi < fs/2");
    }
    if (pole_pairs < 1) {
        throw std::invalid_argument("butter_bandpass: pole_pairs must be >= 1");
    }
    const int n = pole_pairs;
    const double fs2 = 2.0 * fs;
    // pre-warped analog edges (rad/s)
    const double w1 = fs2 * std::tan(M_PI * lo_hz / fs);
    const double w2 = fs2 * std::tan(M_PI * hi_hz / fs);
    const double w0sq = w1 * w2;
    const double bw = w2 - w1;

    // analog low-pass prototype poles on the unit circle, left half plane
    std::vector<cd> analog;
    analog.reserve(2 * static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const cd p = std::polar(1.0, M_PI * (2.0 * k + 1.0) / (2.0 * n) + M_PI / 2.0);
        // low-pass -> band-pass doubles the order: s^2 - bw*p*s + w0^2 = 0
        const cd half = 0.5 * bw * p;
        const cd disc = std::sqrt(half * half - w0sq);
        analog.push_back(half + disc);
        analog.push_back(half - disc);
    }

    // bilinear transform: pole z = (2fs + s)/(2fs - s); n zeros at +1 and
    // n at -1; constant (bw * 2fs)^n / prod(2fs - s_j)
    std::vector<cd> zpoles;
    zpoles.reserve(analog.size());
    cd k_num = std::pow(cd(bw * fs2, 0.0), n);
    cd k_den = 1.0;
    for (const cd& s : analog) {
        zpoles.push_back((fs2 + s) / (fs2 - s));
        k_den *= fs2 - s;
    }
    const double gain = (k_num / k_den).real();

    std::vector<cd> zzeros(static_cast<std::size_t>(n), cd(1.0, 0.0));
    zzeros.insert(zzeros.end(), static_cast<std::size_t>(n), cd(-1.0, 0.0));

    const std::vector<cd> num = poly_from_roots(zzeros);
    const std::vector<cd> den = poly_from_roots(zpoles);
    IirFilter f;
    f.b.reserve(num.size());
    f.a.reserve(den.size());
    for (const cd& c : num) f.b.push_back(gain * c.real());
    for (const cd& c : den) f.a.push_back(c.real());
    return f;
}

std::vector<double> filter_forward(const IirFilter& f, const std::vector<double>& x) {
    if (f.a.empty() || f.a[0] != 1.0) {
        throw std::invalid_argument("filter_forward: a[0] must be 1");
    }
    const std::size_t order = std::max(f.b.size(), f.a.size()) - 1;
    std::vector<double> z(order, 0.0);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        const double yi = (f.b.empty() ? 0.0 : f.b[0] * xi) + (order > 0 ? z[0] : 0.0);
        for (std::size_t k = 1; k <= order; ++k) {
            const double bk = k < f.b.size() ? f.b[k] * xi : 0.0;
            const double ak = k < f.a.size() ? f.a[k] * yi : 0.0;
            z[k - 1] = bk - ak + (k < order ? z[k] : 0.0);
        }
        y[i] = yi;
    }
    return y;
}

namespace {

UniformSignal resample_linear(const UniformSignal& x, double fs_out) {
    const double duration = x.end_time() - x.t0;
    const std::size_t n_out = static_cast<std::size_t>(std::floor(duration * fs_out)) + 1;
    UniformSignal out{x.t0, 1.0 / fs_out, std::vector<double>(n_out)};
    for (std::size_t i = 0; i < n_out; ++i) {
        const double pos = (out.dt * static_cast<double>(i)) / x.dt;
        const std::size_t lo = std::min(static_cast<std::size_t>(pos), x.size() - 1);
        const std::size_t hi = std::min(lo + 1, x.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        out.samples[i] = x.samples[lo] + frac * (x.samples[hi] - x.samples[lo]);
    }
    return out;
}

struct MwiPeak {
    std::size_t idx = 0;
    double v = 0.0;    // integrated-signal peak
    double fv = 0.0;   // band-passed peak magnitude in the look-back window
    std::size_t f_idx = 0;
    double slope = 0.0; // max |derivative| in the look-back window
};

} // namespace

std::vector<Detection> pan_tompkins(const UniformSignal& x_in) {
    if (!(x_in.dt > 0.0)) {
        throw std::invalid_argument("pan_tompkins: dt must be > 0");
    }
    constexpr double kDesignFs = 360.0;
    UniformSignal resampled;
    const UniformSignal* x = &x_in;
    if (std::abs(1.0 / x_in.dt - kDesignFs) > 1e-6) {
        if (x_in.size() < 2) {
            throw std::invalid_argument("pan_tompkins: input shorter than 2 s");
        }
        resampled = resample_linear(x_in, kDesignFs);
        x = &resampled;
    }
    const double fs = kDesignFs;
    const std::size_t n = x->size();
    if (n < static_cast<std::size_t>(2.0 * fs)) {
        throw std::invalid_argument("pan_tompkins: input shorter than 2 s");
    }

    const IirFilter bp = butter_bandpass(5.0, 15.0, fs, 2);
    const std::vector<double> filt = filter_forward(bp, x->samples);

    std::vector<double> der(n, 0.0);
    for (std::size_t i = 4; i < n; ++i) {
        der[i] = (2.0 * filt[i] + filt[i - 1] - filt[i - 3] - 2.0 * filt[i - 4]) / 8.0;
    }

    const std::size_t win = static_cast<std::size_t>(std::lround(0.150 * fs));
    std::vector<double> mwi(n, 0.0);
    {
        long double sum = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            const double sq = der[i] * der[i];
            sum += sq;
            if (i >= win) {
                sum -= der[i - win] * der[i - win];
            }
            mwi[i] = static_cast<double>(sum / std::min(i + 1, win));
        }
    }

    // local maxima of the integrated signal, pruned to >= 200 ms apart
    const std::size_t min_dist = static_cast<std::size_t>(std::lround(0.200 * fs));
    std::vector<std::size_t> peak_idx;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (mwi[i] > mwi[i - 1] && mwi[i] >= mwi[i + 1]) {
            if (!peak_idx.empty() && i - peak_idx.back() < min_dist) {
                if (mwi[i] > mwi[peak_idx.back()]) {
                    peak_idx.back() = i;
                }
            } else {
                peak_idx.push_back(i);
            }
        }
    }

    auto window_stats = [&](std::size_t idx, MwiPeak& p) {
        const std::size_t lo = idx >= win ? idx - win : 0;
        p.idx = idx;
        p.v = mwi[idx];
        p.f_idx = lo;
        p.fv = 0.0;
        p.slope = 0.0;
        for (std::size_t j = lo; j <= idx; ++j) {
            if (std::abs(filt[j]) > p.fv) {
                p.fv = std::abs(filt[j]);
                p.f_idx = j;
            }
            p.slope = std::max(p.slope, std::abs(der[j]));
        }
    };

    // threshold initialization from the first 2 s
    const std::size_t init_n = static_cast<std::size_t>(2.0 * fs);
    double spki = *std::max_element(mwi.begin(), mwi.begin() + init_n) / 3.0;
    double npki = std::accumulate(mwi.begin(), mwi.begin() + init_n, 0.0) / init_n / 2.0;
    double spkf = 0.0;
    double npkf = 0.0;
    for (std::size_t i = 0; i < init_n; ++i) {
        spkf = std::max(spkf, std::abs(filt[i]));
    }
    spkf /= 3.0;
    for (std::size_t i = 0; i < init_n; ++i) {
        npkf += std::abs(filt[i]);
    }
    npkf = npkf / init_n / 2.0;

    // refined detection time: the largest raw deviation from the local
    // mean near the band-passed peak
    auto refine = [&](std::size_t f_idx) {
        const std::size_t half = static_cast<std::size_t>(std::lround(0.050 * fs));
        const std::size_t base_half = static_cast<std::size_t>(std::lround(0.200 * fs));
        const std::size_t blo = f_idx >= base_half ? f_idx - base_half : 0;
        const std::size_t bhi = std::min(n - 1, f_idx + base_half);
        double mean = 0.0;
        for (std::size_t j = blo; j <= bhi; ++j) mean += x->samples[j];
        mean /= static_cast<double>(bhi - blo + 1);
        const std::size_t lo = f_idx >= half ? f_idx - half : 0;
        const std::size_t hi = std::min(n - 1, f_idx + half);
        std::size_t best = f_idx;
        double best_dev = -1.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            const double dev = std::abs(x->samples[j] - mean);
            if (dev > best_dev) {
                best_dev = dev;
                best = j;
            }
        }
        return best;
    };

    std::vector<Detection> detections;
    std::vector<MwiPeak> pending; // peaks since the last accepted QRS
    std::vector<double> rr;       // last 8 accepted RR intervals
    double last_qrs_t = -1e9;
    double last_qrs_slope = 0.0;

    // takes the peak by value: accepting clears `pending`, which may own it
    auto accept = [&](MwiPeak p, double sig_w) {
        spki = sig_w * p.v + (1.0 - sig_w) * spki;
        spkf = sig_w * p.fv + (1.0 - sig_w) * spkf;
        const double t = x->time_at(p.idx);
        if (last_qrs_t > -1e8) {
            rr.push_back(t - last_qrs_t);
            if (rr.size() > 8) {
                rr.erase(rr.begin());
            }
        }
        last_qrs_t = t;
        last_qrs_slope = p.slope;
        detections.push_back({x->time_at(refine(p.f_idx)), p.v});
        pending.clear();
    };

    for (std::size_t pi = 0; pi < peak_idx.size(); ++pi) {
        MwiPeak p;
        window_stats(peak_idx[pi], p);
        const double t = x->time_at(p.idx);
        double thr_i = npki + 0.25 * (spki - npki);
        double thr_f = npkf + 0.25 * (spkf - npkf);

        // search-back when more than 1.66 mean RR elapsed without a beat
        if (!rr.empty()) {
            const double rr_avg = std::accumulate(rr.begin(), rr.end(), 0.0) / rr.size();
            if (t - last_qrs_t > 1.66 * rr_avg) {
                const MwiPeak* best = nullptr;
                for (const MwiPeak& c : pending) {
                    if (c.v >= 0.5 * thr_i && c.fv >= 0.5 * thr_f &&
                        (best == nullptr || c.v > best->v)) {
                        best = &c;
                    }
                }
                if (best != nullptr) {
                    accept(*best, 0.25);
                    thr_i = npki + 0.25 * (spki - npki);
                    thr_f = npkf + 0.25 * (spkf - npkf);
                }
            }
        }

        if (t - last_qrs_t < 0.200) {
            continue; // refractory: not even a noise peak
        }
        bool is_qrs = p.v >= thr_i && p.fv >= thr_f;
        if (is_qrs && t - last_qrs_t < 0.360 && p.slope < 0.5 * last_qrs_slope) {
            is_qrs = false; // T wave
        }
        if (is_qrs) {
            accept(p, 0.125);
        } else {
            npki = 0.125 * p.v + 0.875 * npki;
            npkf = 0.125 * p.fv + 0.875 * npkf;
            pending.push_back(p);
        }
    }
    return detections;
}

} // namespace spiketools
