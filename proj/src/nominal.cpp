#include "rfimon/nominal.hpp"

#include <algorithm>
#include <cmath>

#include "rfimon/errors.hpp"

namespace rfimon {

GridCell cell_of(Vec2 p) {
    return {static_cast<int>(std::floor(p.x)), static_cast<int>(std::floor(p.y))};
}

GridCell cell_of(const MetricPoint& point) {
    return cell_of(Vec2{point.rx_power, point.cn0.value_or(0.0)});
}

namespace {

constexpr double kTruncationRadius = 8.0;  // Mahalanobis; mass loss < 1e-14

// 5-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr double kNodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                              0.5384693101056831, 0.9061798459386640};
constexpr double kWeights[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                0.4786286704993665, 0.2369268850561891};

double cell_mass(Vec2 mean, const Sym2& cov, GridCell c) {
    double acc = 0.0;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            const Vec2 p{c.i + 0.5 + 0.5 * kNodes[a], c.j + 0.5 + 0.5 * kNodes[b]};
            acc += kWeights[a] * kWeights[b] * gauss2_pdf(mean, cov, p);
        }
    return acc * 0.25;  // jacobian of the unit cell
}

}  // namespace

void rebuild_grid(NominalModel& model) {
    model.grid.clear();
    // bounding box from the largest covariance eigenvalue
    const double tr = model.covariance.xx + model.covariance.yy;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - model.covariance.det()));
    const double sigma_max = std::sqrt(tr / 2.0 + disc);
    const double reach = kTruncationRadius * sigma_max + 1.0;

    const int i_lo = static_cast<int>(std::floor(model.mean.x - reach));
    const int i_hi = static_cast<int>(std::ceil(model.mean.x + reach));
    const int j_lo = static_cast<int>(std::floor(model.mean.y - reach));
    const int j_hi = static_cast<int>(std::ceil(model.mean.y + reach));

    double total = 0.0;
    for (int i = i_lo; i <= i_hi; ++i)
        for (int j = j_lo; j <= j_hi; ++j) {
            const GridCell c{i, j};
            if (model.covariance.mahalanobis2(model.mean, cell_center(c)) >
                kTruncationRadius * kTruncationRadius)
                continue;
            const double m = cell_mass(model.mean, model.covariance, c);
            if (m > 0.0) {
                model.grid[c] = m;
                total += m;
            }
        }
    for (auto& [c, m] : model.grid) m /= total;
}

NominalModel fit_nominal(std::span<const MetricPoint> points, double elevation_lo,
                         double elevation_hi, const std::set<std::string>& sat_filter) {
    std::vector<Vec2> sel;
    for (const auto& p : points) {
        if (!p.cn0) continue;
        if (p.elevation_deg < elevation_lo || p.elevation_deg > elevation_hi) continue;
        if (!sat_filter.empty() && !sat_filter.contains(p.sat)) continue;
        sel.push_back({p.rx_power, *p.cn0});
    }
    if (sel.size() < 100) throw TooFewPoints("need at least 100 points after filtering");

    Vec2 mean;
    for (const auto& v : sel) mean = mean + v;
    mean = mean * (1.0 / static_cast<double>(sel.size()));

    Sym2 cov{0.0, 0.0, 0.0};
    for (const auto& v : sel) {
        const Vec2 d = v - mean;
        cov.xx += d.x * d.x;
        cov.xy += d.x * d.y;
        cov.yy += d.y * d.y;
    }
    const double denom = static_cast<double>(sel.size()) - 1.0;
    cov.xx /= denom;
    cov.xy /= denom;
    cov.yy /= denom;
    if (!cov.positive_definite() || cov.det() < 1e-12)
        throw DegenerateCovariance("sample covariance is not positive definite");

    std::set<int> cells_x, cells_y;
    for (const auto& v : sel) {
        cells_x.insert(static_cast<int>(std::floor(v.x)));
        cells_y.insert(static_cast<int>(std::floor(v.y)));
    }
    if (cells_x.size() < 2 || cells_y.size() < 2)
        throw DegenerateCovariance("points span fewer than 2 grid cells on an axis");

    NominalModel model;
    model.mean = mean;
    model.covariance = cov;
    model.elevation_lo = elevation_lo;
    model.elevation_hi = elevation_hi;
    model.sat_filter = sat_filter;
    rebuild_grid(model);
    return model;
}

RecenterResult recenter(const NominalModel& model, std::span<const MetricPoint> local_points) {
    std::vector<Vec2> sel;
    for (const auto& p : local_points) {
        if (!p.cn0) continue;
        sel.push_back({p.rx_power, *p.cn0});
    }
    if (sel.size() < 100) throw TooFewPoints("need at least 100 local nominal points");

    Vec2 local_mean;
    for (const auto& v : sel) local_mean = local_mean + v;
    local_mean = local_mean * (1.0 / static_cast<double>(sel.size()));

    const Vec2 d = local_mean - model.mean;
    if (std::fabs(d.x) > 20.0 || std::fabs(d.y) > 20.0)
        throw OffsetTooLarge("site offset exceeds the 20 dB sanity bound");

    RecenterResult r;
    r.offset = {d.x, d.y};
    r.model = model;
    r.model.mean = local_mean;
    r.model.site_offset.d_rx_power = model.site_offset.d_rx_power + d.x;
    r.model.site_offset.d_cn0 = model.site_offset.d_cn0 + d.y;
    rebuild_grid(r.model);
    return r;
}

}  // namespace rfimon
