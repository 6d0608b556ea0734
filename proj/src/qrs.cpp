#include "spiketools/qrs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "spiketools/metrics.hpp"

namespace spiketools {

TimeSeries local_discrepancy_signal(const SpikeTrain& train, double window_disc) {
    if (!(window_disc >= 0.0)) {
        throw std::invalid_argument("local_discrepancy_signal: window must be >= 0");
    }
    const auto& sp = train.spikes();
    TimeSeries out;
    out.reserve(sp.size());
    std::size_t left = 0;
    for (std::size_t k = 0; k < sp.size(); ++k) {
        while (sp[left].t < sp[k].t - window_disc) {
            ++left;
        }
        double prefix = 0.0;
        double lo = 0.0;
        double hi = 0.0;
        for (std::size_t j = left; j <= k; ++j) {
            prefix += sp[j].amplitude;
            lo = std::min(lo, prefix);
            hi = std::max(hi, prefix);
        }
        out.push_back({sp[k].t, hi - lo});
    }
    return out;
}

TimeSeries moving_average(const TimeSeries& series, double window) {
    if (!(window > 0.0)) {
        throw std::invalid_argument("moving_average: window must be > 0");
    }
    TimeSeries out;
    out.reserve(series.size());
    long double sum = 0.0L;
    std::size_t left = 0;
    for (std::size_t k = 0; k < series.size(); ++k) {
        sum += series[k].value;
        while (series[left].t <= series[k].t - window) {
            sum -= series[left].value;
            ++left;
        }
        out.push_back({series[k].t, static_cast<double>(sum / (k - left + 1))});
    }
    return out;
}

TimeSeries moving_max(const TimeSeries& series, double window) {
    if (!(window > 0.0)) {
        throw std::invalid_argument("moving_max: window must be > 0");
    }
    TimeSeries out;
    out.reserve(series.size());
    std::deque<std::size_t> deque; // indices with decreasing values
    for (std::size_t k = 0; k < series.size(); ++k) {
        while (!deque.empty() && series[deque.back()].value <= series[k].value) {
            deque.pop_back();
        }
        deque.push_back(k);
        while (series[deque.front()].t <= series[k].t - window) {
            deque.pop_front();
        }
        out.push_back({series[k].t, series[deque.front()].value});
    }
    return out;
}

std::vector<Detection> detect_qrs_discrepancy(const SpikeTrain& train,
                                              const DiscrepancyDetectorConfig& cfg) {
    if (!(cfg.window_disc > 0.0) || !(cfg.window_prefilter > 0.0) || !(cfg.window_stats > 0.0)) {
        throw std::invalid_argument("detect_qrs_discrepancy: windows must be > 0");
    }
    if (!(cfg.level_fraction > 0.0) || !(cfg.level_fraction < 1.0)) {
        throw std::invalid_argument("detect_qrs_discrepancy: level_fraction must be in (0, 1)");
    }
    if (train.empty()) {
        return {};
    }

    const TimeSeries disc = local_discrepancy_signal(train, cfg.window_disc);
    const TimeSeries filt = moving_average(disc, cfg.window_prefilter);
    TimeSeries mmax = moving_max(filt, cfg.window_stats);
    TimeSeries mavg = moving_average(filt, cfg.window_stats);

    // Events inside the first stats window are compared against the
    // statistics of that whole window, the way Pan-Tompkins initializes
    // its thresholds from the opening seconds of the record.
    {
        const double learn_end = filt.front().t + cfg.window_stats;
        std::size_t n_learn = 0;
        double learn_max = 0.0;
        long double learn_sum = 0.0L;
        while (n_learn < filt.size() && filt[n_learn].t < learn_end) {
            learn_max = std::max(learn_max, filt[n_learn].value);
            learn_sum += filt[n_learn].value;
            ++n_learn;
        }
        const double learn_avg = static_cast<double>(learn_sum / n_learn);
        for (std::size_t k = 0; k < n_learn; ++k) {
            mmax[k].value = learn_max;
            mavg[k].value = learn_avg;
        }
    }

    // The series is event-aligned, so "falls back under the moving
    // average" is pinned to the last event still observed above it; the
    // first below-average event only reveals that the episode has ended.
    // An episode may only open at or above the moving average: a value
    // below it counts as already fallen back, never as a fresh crossing.
    std::vector<Detection> out;
    bool above = false;
    double cross_t = 0.0;
    double last_above_t = 0.0;
    double peak = 0.0;
    for (std::size_t k = 0; k < filt.size(); ++k) {
        const double v = filt[k].value;
        if (!above) {
            if (v > cfg.level_fraction * mmax[k].value && v >= mavg[k].value) {
                above = true;
                cross_t = filt[k].t;
                last_above_t = filt[k].t;
                peak = v;
            }
        } else if (v < mavg[k].value) {
            out.push_back({0.5 * (cross_t + last_above_t), peak});
            above = false;
        } else {
            last_above_t = filt[k].t;
            peak = std::max(peak, v);
        }
    }
    return out;
}

} // namespace spiketools
