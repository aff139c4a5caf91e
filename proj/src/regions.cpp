#include "rfimon/regions.hpp"

#include <algorithm>
#include <cmath>

#include "rfimon/errors.hpp"

namespace rfimon {

namespace {
Vec2 to_ellipse_frame(const ThresholdEllipse& e, Vec2 p) {
    const Vec2 d = p - e.center;
    const double c = std::cos(e.rotation);
    const double s = std::sin(e.rotation);
    return {c * d.x + s * d.y, -s * d.x + c * d.y};
}
}  // namespace

bool ThresholdEllipse::contains(Vec2 p) const {
    const Vec2 u = to_ellipse_frame(*this, p);
    const double nx = u.x / semi_axes.x;
    const double ny = u.y / semi_axes.y;
    return nx * nx + ny * ny <= 1.0;
}

Vec2 ThresholdEllipse::at(double t) const {
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    const double ex = semi_axes.x * std::cos(t);
    const double ey = semi_axes.y * std::sin(t);
    return {center.x + c * ex - s * ey, center.y + s * ex + c * ey};
}

Vec2 ThresholdEllipse::tangent_point(Vec2 direction) const {
    // maximize d.p over the boundary: in the ellipse frame the optimum is at
    // (a^2 u, b^2 v) / ||(a u, b v)|| with u = R^T d
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    const Vec2 u{c * direction.x + s * direction.y, -s * direction.x + c * direction.y};
    const double au = semi_axes.x * u.x;
    const double bv = semi_axes.y * u.y;
    const double n = std::hypot(au, bv);
    const Vec2 local{semi_axes.x * au / n, semi_axes.y * bv / n};
    return {center.x + c * local.x - s * local.y, center.y + s * local.x + c * local.y};
}

double ThresholdEllipse::half_width_x() const {
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    return std::hypot(semi_axes.x * c, semi_axes.y * s);
}

double ellipse_area(const ThresholdEllipse& ellipse) {
    return M_PI * ellipse.semi_axes.x * ellipse.semi_axes.y;
}

RegionMap build_regions(const NominalModel& model, const ThresholdEllipse& ellipse,
                        const RegionConfig& cfg) {
    if (!ellipse.contains(model.mean))
        throw EllipseExcludesMean("detection ellipse does not enclose the model mean");

    RegionMap map;
    map.ellipse = ellipse;
    map.cn0_floor = cfg.cn0_floor;
    map.jam_slope = cfg.jam_slope;
    map.spoof_anchor = ellipse.tangent_point({1.0, 1.0});
    const double hw = ellipse.half_width_x();
    map.noise_floor = ellipse.center.x - hw;
    map.band_lo = ellipse.center.x - hw;
    map.band_hi = ellipse.center.x + hw;
    return map;
}

RegionMap RegionMap::translated(const SiteOffset& offset) const {
    RegionMap out = *this;
    const Vec2 d{offset.d_rx_power, offset.d_cn0};
    out.ellipse.center = ellipse.center + d;
    out.spoof_anchor = spoof_anchor + d;
    out.noise_floor = noise_floor + d.x;
    out.band_lo = band_lo + d.x;
    out.band_hi = band_hi + d.x;
    return out;
}

namespace {

double point_line_distance(Vec2 p, Vec2 anchor, double slope) {
    // line y = anchor.y + slope (x - anchor.x)
    const double a = slope;
    const double c = anchor.y - slope * anchor.x;
    return std::fabs(a * p.x - p.y + c) / std::hypot(a, 1.0);
}

double ellipse_boundary_distance(const ThresholdEllipse& e, Vec2 p) {
    // parametric minimization; coarse scan plus golden-section refinement
    double best_t = 0.0;
    double best = std::numeric_limits<double>::infinity();
    constexpr int kSteps = 256;
    for (int k = 0; k < kSteps; ++k) {
        const double t = 2.0 * M_PI * k / kSteps;
        const double d = (e.at(t) - p).norm();
        if (d < best) {
            best = d;
            best_t = t;
        }
    }
    double lo = best_t - 2.0 * M_PI / kSteps;
    double hi = best_t + 2.0 * M_PI / kSteps;
    constexpr double kPhi = 0.6180339887498949;
    double x1 = hi - kPhi * (hi - lo);
    double x2 = lo + kPhi * (hi - lo);
    double f1 = (e.at(x1) - p).norm();
    double f2 = (e.at(x2) - p).norm();
    for (int it = 0; it < 40; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kPhi * (hi - lo);
            f1 = (e.at(x1) - p).norm();
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kPhi * (hi - lo);
            f2 = (e.at(x2) - p).norm();
        }
    }
    return std::min(f1, f2);
}

}  // namespace

ClassifiedPoint classify(const MetricPoint& point, const RegionMap& regions) {
    ClassifiedPoint cp;
    cp.point = point;

    const Vec2 p{point.rx_power, point.cn0.value_or(0.0)};
    const bool in_band = point.rx_power >= regions.band_lo && point.rx_power <= regions.band_hi;

    if (point.rx_power < regions.noise_floor) {
        cp.label = Label::Unrealistic;
    } else if (point.cn0 && regions.ellipse.contains(p)) {
        cp.label = Label::Nominal;
    } else if (!point.cn0) {
        cp.label = Label::SignalLoss;
        cp.loss_attribution = in_band ? Label::Blocked : Label::Jamming;
    } else if (*point.cn0 > regions.boundary_cn0(point.rx_power) &&
               point.rx_power > regions.band_hi) {
        cp.label = Label::Spoofing;
    } else if (in_band && *point.cn0 < regions.ellipse.center.y) {
        cp.label = Label::Blocked;
    } else {
        cp.label = Label::Jamming;
    }

    double margin = ellipse_boundary_distance(regions.ellipse, p);
    margin = std::min(margin, std::fabs(point.rx_power - regions.noise_floor));
    margin = std::min(margin, point_line_distance(p, regions.spoof_anchor, regions.jam_slope));
    cp.margin = margin;
    return cp;
}

Label effective_label(const ClassifiedPoint& cp) {
    if (cp.label == Label::SignalLoss && cp.loss_attribution) return *cp.loss_attribution;
    return cp.label;
}

StreamClassification classify_stream(std::span<const MetricPoint> points,
                                     const RegionMap& regions) {
    StreamClassification out;
    out.points.reserve(points.size());
    for (const auto& p : points) {
        out.points.push_back(classify(p, regions));
        ++out.counts[out.points.back().label];
    }
    return out;
}

}  // namespace rfimon
