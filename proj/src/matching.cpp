#include "spiketools/matching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace spiketools {

MatchResult match_detections(std::span<const double> detection_times,
                             std::span<const double> beat_times, double tol) {
    if (!(tol >= 0.0)) {
        throw std::invalid_argument("match_detections: tol must be >= 0");
    }
    struct Candidate {
        double dist;
        double key_lo; // symmetric tie-break keys
        double key_hi;
        std::size_t det;
        std::size_t beat;
    };
    std::vector<Candidate> candidates;
    std::size_t lo = 0;
    for (std::size_t d = 0; d < detection_times.size(); ++d) {
        const double t = detection_times[d];
        while (lo < beat_times.size() && beat_times[lo] < t - tol) {
            ++lo;
        }
        for (std::size_t b = lo; b < beat_times.size() && beat_times[b] <= t + tol; ++b) {
            candidates.push_back({std::abs(t - beat_times[b]), std::min(t, beat_times[b]),
                                  std::max(t, beat_times[b]), d, b});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.key_lo != b.key_lo) return a.key_lo < b.key_lo;
        return a.key_hi < b.key_hi;
    });

    std::vector<bool> det_used(detection_times.size(), false);
    std::vector<bool> beat_used(beat_times.size(), false);
    MatchResult m;
    for (const Candidate& c : candidates) {
        if (!det_used[c.det] && !beat_used[c.beat]) {
            det_used[c.det] = true;
            beat_used[c.beat] = true;
            ++m.tp;
        }
    }
    m.p = beat_times.size();
    m.pp = detection_times.size();
    m.fn = m.p - m.tp;
    m.fp = m.pp - m.tp;
    return m;
}

DetectionScores tpr_ppv(const MatchResult& m) {
    DetectionScores s;
    if (m.p > 0) {
        s.tpr = static_cast<double>(m.tp) / static_cast<double>(m.p);
    }
    if (m.pp > 0) {
        s.ppv = static_cast<double>(m.tp) / static_cast<double>(m.pp);
    }
    return s;
}

} // namespace spiketools
