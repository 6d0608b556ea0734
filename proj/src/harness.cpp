#include "spiketools/harness.hpp"

#include <stdexcept>

namespace spiketools {

QrsMethod qrs_method_from_string(const std::string& name) {
    if (name == "pantompkins") return QrsMethod::PanTompkins;
    if (name == "discrepancy") return QrsMethod::Discrepancy;
    throw std::invalid_argument("unknown method '" + name + "' (use pantompkins|discrepancy)");
}

const char* to_string(QrsMethod method) {
    return method == QrsMethod::PanTompkins ? "pantompkins" : "discrepancy";
}

SpikeTrain sod_front_end(const UniformSignal& x, double theta_sod, int upsample) {
    return sod_encode(normalize(upsample_cubic(x, upsample)), {theta_sod});
}

QrsEvaluation evaluate_qrs(const AnnotatedRecord& rec, std::size_t channel, QrsMethod method,
                           double tol, double theta_sod, int upsample) {
    if (channel >= rec.channels.size()) {
        throw std::invalid_argument("record has no channel " + std::to_string(channel));
    }
    const UniformSignal& x = rec.channels[channel];

    QrsEvaluation eval;
    if (method == QrsMethod::PanTompkins) {
        eval.detections = pan_tompkins(x);
        eval.n_events = x.size();
    } else {
        const SpikeTrain spikes = sod_front_end(x, theta_sod, upsample);
        eval.detections = detect_qrs_discrepancy(spikes);
        eval.n_events = spikes.size();
    }

    std::vector<double> det_times;
    det_times.reserve(eval.detections.size());
    for (const Detection& d : eval.detections) {
        det_times.push_back(d.t);
    }
    std::vector<double> beat_times;
    beat_times.reserve(rec.beats.size());
    for (const Annotation& a : rec.beats) {
        beat_times.push_back(a.t);
    }
    eval.match = match_detections(det_times, beat_times, tol);
    eval.scores = tpr_ppv(eval.match);
    return eval;
}

} // namespace spiketools
