#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <unordered_map>

#include "rfimon/types.hpp"
#include "rfimon/util.hpp"

namespace rfimon {

/// Integer cell on the 1 dB x 1 dB-Hz grid (floor quantization).
struct GridCell {
    int i = 0;  // floor(rx_power)
    int j = 0;  // floor(cn0)
    bool operator==(const GridCell&) const = default;
};

struct GridCellHash {
    std::size_t operator()(const GridCell& c) const {
        return std::hash<std::int64_t>{}((static_cast<std::int64_t>(c.i) << 32) ^
                                         static_cast<std::uint32_t>(c.j));
    }
};

using ProbabilityGrid = std::unordered_map<GridCell, double, GridCellHash>;

struct SiteOffset {
    double d_rx_power = 0.0;
    double d_cn0 = 0.0;
};

/// Gaussian fit of the nominal (rx_power, cn0) cloud plus its discretized mass.
struct NominalModel {
    Vec2 mean;        // (rx_power dBW/Hz, cn0 dB-Hz)
    Sym2 covariance;  // dB^2
    ProbabilityGrid grid;
    double elevation_lo = 0.0;
    double elevation_hi = 90.0;
    std::set<std::string> sat_filter;  // empty = accept all
    SiteOffset site_offset;
};

GridCell cell_of(const MetricPoint& point);
GridCell cell_of(Vec2 p);
inline Vec2 cell_center(GridCell c) { return {c.i + 0.5, c.j + 0.5}; }

/// Fit mean/covariance on raw points, then integrate the Gaussian per cell
/// (truncated at Mahalanobis radius 8, renormalized).
NominalModel fit_nominal(std::span<const MetricPoint> points, double elevation_lo,
                         double elevation_hi, const std::set<std::string>& sat_filter = {});

struct RecenterResult {
    NominalModel model;
    SiteOffset offset;
};

/// Shift the model mean to the local nominal mean; covariance unchanged.
RecenterResult recenter(const NominalModel& model, std::span<const MetricPoint> local_points);

/// Rebuild the probability grid from the model's mean and covariance.
void rebuild_grid(NominalModel& model);

}  // namespace rfimon
