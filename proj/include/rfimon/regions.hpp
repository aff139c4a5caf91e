#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rfimon/nominal.hpp"
#include "rfimon/types.hpp"
#include "rfimon/util.hpp"

namespace rfimon {

struct ThresholdEllipse {
    Vec2 center;      // (dBW/Hz, dB-Hz)
    Vec2 semi_axes;   // (dB, dB-Hz), both > 0
    double rotation = 0.0;  // radians in [-pi/2, pi/2)

    bool contains(Vec2 p) const;
    /// Point on the boundary at parameter t.
    Vec2 at(double t) const;
    /// Boundary point maximizing direction.dot(point).
    Vec2 tangent_point(Vec2 direction) const;
    /// rx_power extent: center.x +/- half_width.
    double half_width_x() const;
};

double ellipse_area(const ThresholdEllipse& ellipse);

struct RegionConfig {
    double cn0_floor = 27.0;  // dB-Hz, aviation usability floor
    double jam_slope = -1.0;  // dB-Hz per dB, lab-derived jamming trend
};

/// Frozen geometry that totally partitions the metric plane.
struct RegionMap {
    ThresholdEllipse ellipse;
    double cn0_floor = 27.0;
    double jam_slope = -1.0;
    Vec2 spoof_anchor;     // ellipse point maximizing rx_power + cn0
    double noise_floor = 0.0;  // min rx_power of the ellipse
    double band_lo = 0.0;      // nominal rx_power band (ellipse x-extent)
    double band_hi = 0.0;

    /// C/N0 on the spoof boundary at the given rx_power.
    double boundary_cn0(double rx_power) const {
        return spoof_anchor.y + jam_slope * (rx_power - spoof_anchor.x);
    }

    RegionMap translated(const SiteOffset& offset) const;
};

RegionMap build_regions(const NominalModel& model, const ThresholdEllipse& ellipse,
                        const RegionConfig& cfg = {});

struct ClassifiedPoint {
    MetricPoint point;
    Label label = Label::Nominal;
    /// For SignalLoss: which path (Blocked or Jamming) the loss is attributed to.
    std::optional<Label> loss_attribution;
    double margin = 0.0;  // dB distance to the nearest region boundary
};

ClassifiedPoint classify(const MetricPoint& point, const RegionMap& regions);

/// Detection-relevant label: SignalLoss collapses to its attribution.
Label effective_label(const ClassifiedPoint& cp);

struct StreamClassification {
    std::vector<ClassifiedPoint> points;
    std::map<Label, std::size_t> counts;
};

StreamClassification classify_stream(std::span<const MetricPoint> points,
                                     const RegionMap& regions);

}  // namespace rfimon
