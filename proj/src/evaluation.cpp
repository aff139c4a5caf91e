#include "rfimon/evaluation.hpp"

#include "rfimon/errors.hpp"

namespace rfimon {

DetectionReport report_from_counts(const ConfusionMatrix& counts) {
    DetectionReport r;
    r.counts = counts;
    if (counts.tp + counts.fn > 0)
        r.sensitivity = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn);
    if (counts.tn + counts.fp > 0)
        r.specificity = static_cast<double>(counts.tn) / static_cast<double>(counts.tn + counts.fp);
    if (counts.total() > 0)
        r.accuracy =
            static_cast<double>(counts.tp + counts.tn) / static_cast<double>(counts.total());
    return r;
}

DetectionReport score_detection(std::span<const Label> pred, std::span<const Label> truth,
                                const std::set<Label>& positive_set) {
    if (pred.size() != truth.size())
        throw LengthMismatch("prediction and truth sequences differ in length");

    ConfusionMatrix m;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const bool p = positive_set.contains(pred[i]);
        const bool t = positive_set.contains(truth[i]);
        if (p && t)
            ++m.tp;
        else if (p && !t)
            ++m.fp;
        else if (!p && t)
            ++m.fn;
        else
            ++m.tn;
    }
    return report_from_counts(m);
}

std::vector<WindowSlice> window_slice(std::span<const double> times,
                                      std::span<const Label> pred,
                                      std::span<const Label> truth,
                                      std::span<const Window> windows) {
    if (times.size() != pred.size() || times.size() != truth.size())
        throw LengthMismatch("times, pred and truth must align");

    const double t_min = times.empty() ? 0.0 : times.front();
    const double t_max = times.empty() ? 0.0 : times.back();
    std::vector<WindowSlice> slices;
    for (const auto& w : windows) {
        if (!times.empty() && (w.t1 < t_min || w.t0 > t_max) && w.t0 < w.t1)
            throw WindowOutOfRange("window [" + std::to_string(w.t0) + ", " +
                                   std::to_string(w.t1) + ") outside the stream");
        WindowSlice s;
        s.name = w.name;
        for (std::size_t i = 0; i < times.size(); ++i)
            if (times[i] >= w.t0 && times[i] < w.t1) {
                s.pred.push_back(pred[i]);
                s.truth.push_back(truth[i]);
            }
        slices.push_back(std::move(s));
    }
    return slices;
}

}  // namespace rfimon
