#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace spiketools {

/// Detection-to-annotation accounting: p = tp + fn ground-truth positives,
/// pp = tp + fp detector positives.
struct MatchResult {
    std::size_t tp = 0;
    std::size_t fn = 0;
    std::size_t fp = 0;
    std::size_t p = 0;
    std::size_t pp = 0;

    friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

/// Greedy one-to-one nearest-neighbor matching of detection times against
/// beat times within +-tol seconds: candidate pairs are taken in order of
/// increasing distance, each side used at most once. Both inputs must be
/// time-sorted.
MatchResult match_detections(std::span<const double> detection_times,
                             std::span<const double> beat_times, double tol = 0.150);

/// TPR = tp/p and PPV = tp/pp; a zero denominator yields an empty optional
/// (metric undefined, not zero).
struct DetectionScores {
    std::optional<double> tpr;
    std::optional<double> ppv;
};

DetectionScores tpr_ppv(const MatchResult& m);

} // namespace spiketools
