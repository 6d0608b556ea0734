#pragma once

#include <vector>

#include "spiketools/types.hpp"

namespace spiketools {

/// A timestamped detector event. The score is detector-internal (peak
/// height of whatever statistic triggered the detection).
struct Detection {
    double t = 0.0;
    double score = 0.0;

    friend bool operator==(const Detection&, const Detection&) = default;
};

/// Sample of an event-aligned series.
struct TimePoint {
    double t = 0.0;
    double value = 0.0;

    friend bool operator==(const TimePoint&, const TimePoint&) = default;
};

using TimeSeries = std::vector<TimePoint>;

struct DiscrepancyDetectorConfig {
    double window_disc = 0.018;    ///< discrepancy look-back window, s
    double window_prefilter = 0.1; ///< pre-filter moving-average window, s
    double window_stats = 2.0;     ///< moving max / moving average window, s
    double level_fraction = 0.6;   ///< crossing threshold vs the moving max
};

/// For each spike at t_k, the Weyl discrepancy of the amplitudes of all
/// spikes with time in [t_k - window_disc, t_k].
TimeSeries local_discrepancy_signal(const SpikeTrain& train, double window_disc);

/// Trailing mean over entries with time in (t - window, t].
TimeSeries moving_average(const TimeSeries& series, double window);

/// Trailing maximum over entries with time in (t - window, t].
TimeSeries moving_max(const TimeSeries& series, double window);

/// Event-driven QRS detector: the pre-filtered local-discrepancy signal is
/// compared against level_fraction of its trailing moving max; an episode
/// opens on a strict upward crossing and closes when the value falls
/// strictly below the trailing moving average, emitting a Detection at the
/// midpoint of the episode. Causal: only trailing windows are used.
std::vector<Detection> detect_qrs_discrepancy(const SpikeTrain& train,
                                              const DiscrepancyDetectorConfig& cfg = {});

/// Pan-Tompkins QRS detector: causal Butterworth band-pass 5-15 Hz,
/// five-point derivative, squaring, 150 ms moving-window integration, and
/// adaptive dual signal/noise thresholds with T-wave discrimination,
/// 200 ms refractory and RR-driven search-back. Inputs not sampled at
/// 360 Hz are resampled internally. Throws std::invalid_argument for
/// inputs shorter than 2 s (threshold initialization window).
std::vector<Detection> pan_tompkins(const UniformSignal& x);

/// Causal IIR filter in transfer-function form, a[0] == 1.
struct IirFilter {
    std::vector<double> b;
    std::vector<double> a;
};

/// Butterworth band-pass design via the bilinear transform; pole_pairs is
/// the analog prototype order (total digital order 2*pole_pairs).
IirFilter butter_bandpass(double lo_hz, double hi_hz, double fs, int pole_pairs);

/// Direct-form II transposed filtering, zero initial state.
std::vector<double> filter_forward(const IirFilter& f, const std::vector<double>& x);

} // namespace spiketools
