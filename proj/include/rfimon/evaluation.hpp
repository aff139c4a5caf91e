#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rfimon/simulator.hpp"
#include "rfimon/types.hpp"

namespace rfimon {

struct ConfusionMatrix {
    long tp = 0;
    long fp = 0;
    long fn = 0;
    long tn = 0;

    long total() const { return tp + fp + fn + tn; }
    ConfusionMatrix& operator+=(const ConfusionMatrix& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        tn += o.tn;
        return *this;
    }
};

/// Ratios are absent when their denominator is zero (the "No RFI" row dashes).
struct DetectionReport {
    ConfusionMatrix counts;
    std::optional<double> sensitivity;  // tp / (tp + fn)
    std::optional<double> specificity;  // tn / (tn + fp)
    std::optional<double> accuracy;     // (tp + tn) / total
};

DetectionReport report_from_counts(const ConfusionMatrix& counts);

DetectionReport score_detection(std::span<const Label> pred, std::span<const Label> truth,
                                const std::set<Label>& positive_set);

struct Window {
    double t0 = 0.0;
    double t1 = 0.0;
    std::string name;
};

struct WindowSlice {
    std::string name;
    std::vector<Label> pred;
    std::vector<Label> truth;
};

/// Slice aligned (pred, truth) sequences into named time windows.
std::vector<WindowSlice> window_slice(std::span<const double> times,
                                      std::span<const Label> pred,
                                      std::span<const Label> truth,
                                      std::span<const Window> windows);

}  // namespace rfimon
