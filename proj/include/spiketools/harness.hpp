#pragma once

#include <string>

#include "spiketools/matching.hpp"
#include "spiketools/qrs.hpp"
#include "spiketools/sod.hpp"
#include "spiketools/wfdb.hpp"

namespace spiketools {

enum class QrsMethod { PanTompkins, Discrepancy };

QrsMethod qrs_method_from_string(const std::string& name);
const char* to_string(QrsMethod method);

/// The event-based front end: cubic upsampling, peak normalization, then
/// send-on-delta encoding.
SpikeTrain sod_front_end(const UniformSignal& x, double theta_sod = 0.05, int upsample = 10);

struct QrsEvaluation {
    std::vector<Detection> detections;
    MatchResult match;
    DetectionScores scores;
    std::size_t n_events = 0; ///< spikes consumed (event methods) or samples (Pan-Tompkins)
};

/// Runs one detector on one channel of a record and scores it against the
/// record's beat annotations.
QrsEvaluation evaluate_qrs(const AnnotatedRecord& rec, std::size_t channel, QrsMethod method,
                           double tol = 0.150, double theta_sod = 0.05, int upsample = 10);

} // namespace spiketools
