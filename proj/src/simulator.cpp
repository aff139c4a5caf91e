#include "rfimon/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "rfimon/errors.hpp"
#include "rfimon/util.hpp"

namespace rfimon {

namespace {

const Event* active_event(const ScenarioScript& script, double t, bool lagged) {
    for (const auto& ev : script.events) {
        const double lag = lagged ? ev.lag_s : 0.0;
        if (t >= ev.t_start + lag && t < ev.t_end + lag) return &ev;
    }
    return nullptr;
}

Label truth_label(EventKind kind) {
    switch (kind) {
        case EventKind::StepJam:
        case EventKind::RampJam: return Label::Jamming;
        case EventKind::Spoof: return Label::Spoofing;
        case EventKind::Block: return Label::Blocked;
    }
    return Label::Nominal;
}

}  // namespace

LabeledStream render(const ScenarioScript& script, std::uint64_t seed) {
    LabeledStream out;
    Rng rng(seed);
    const double dt = 1.0 / script.epoch_rate_hz;
    const double n0 = script.baseline.rx_power;
    const double c0 = script.baseline.cn0;
    const double loss_floor = script.tracking_floor - script.loss_hysteresis;

    for (double t = 0.0; t < script.duration_s; t += dt) {
        double rx = n0;
        double cn0 = c0;
        bool spoof_captured = false;

        if (const Event* ev = active_event(script, t, /*lagged=*/true)) {
            switch (ev->kind) {
                case EventKind::StepJam: {
                    const double excess = lin_to_db(1.0 + db_to_lin(ev->power_db));
                    rx = n0 + excess;
                    cn0 = c0 - excess;
                    break;
                }
                case EventKind::RampJam: {
                    // excess received power grows linearly; trajectory rides the
                    // slope -1 jamming path exactly
                    const double excess =
                        std::max(0.0, ev->ramp_rate * (t - (ev->t_start + ev->lag_s)));
                    rx = n0 + excess;
                    cn0 = c0 - excess;
                    break;
                }
                case EventKind::Spoof: {
                    const double excess = lin_to_db(1.0 + db_to_lin(ev->jam_power_db) +
                                                    db_to_lin(ev->spoof_power_db));
                    rx = n0 + excess;
                    spoof_captured = ev->spoof_power_db >= ev->jam_power_db + 3.0;
                    cn0 = spoof_captured ? ev->spoof_cn0 : c0 - excess;
                    break;
                }
                case EventKind::Block: {
                    cn0 = c0 - ev->power_db;
                    break;
                }
            }
        }

        rx += script.baseline.sigma_rx * rng.normal();
        cn0 += script.baseline.sigma_cn0 * rng.normal();

        MetricPoint p;
        p.t = t;
        p.sat = script.sat;
        p.elevation_deg = script.elevation_deg;
        p.rx_power = rx;
        if (cn0 >= loss_floor) p.cn0 = cn0;
        out.points.push_back(std::move(p));

        const Event* truth_ev = active_event(script, t, /*lagged=*/false);
        out.truth.push_back(truth_ev ? truth_label(truth_ev->kind) : Label::Nominal);
    }
    return out;
}

std::optional<double> ramp_crossing_time(const ScenarioScript& script,
                                         const RegionMap& regions) {
    const Event* ramp = nullptr;
    for (const auto& ev : script.events)
        if (ev.kind == EventKind::RampJam) {
            if (ramp) throw NoRamp("script contains more than one RampJam");
            ramp = &ev;
        }
    if (!ramp) throw NoRamp("script contains no RampJam event");

    const Vec2 p0{script.baseline.rx_power, script.baseline.cn0};
    if (!regions.ellipse.contains(p0)) return ramp->t_start;
    if (ramp->ramp_rate <= 0.0) return std::nullopt;

    // p(e) = p0 + e (1, -1); solve the boundary quadratic in the ellipse frame
    const ThresholdEllipse& el = regions.ellipse;
    const double c = std::cos(el.rotation);
    const double s = std::sin(el.rotation);
    const Vec2 d0 = p0 - el.center;
    const Vec2 u0{c * d0.x + s * d0.y, -s * d0.x + c * d0.y};
    const Vec2 dir{c - s, -s - c};  // rotated (1, -1)
    const double ax = el.semi_axes.x;
    const double ay = el.semi_axes.y;

    const double A = (dir.x * dir.x) / (ax * ax) + (dir.y * dir.y) / (ay * ay);
    const double B = 2.0 * (u0.x * dir.x / (ax * ax) + u0.y * dir.y / (ay * ay));
    const double C = (u0.x * u0.x) / (ax * ax) + (u0.y * u0.y) / (ay * ay) - 1.0;
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) return std::nullopt;
    const double e_exit = (-B + std::sqrt(disc)) / (2.0 * A);
    if (e_exit < 0.0) return std::nullopt;

    const double t_cross = ramp->t_start + ramp->lag_s + e_exit / ramp->ramp_rate;
    if (t_cross > ramp->t_end + ramp->lag_s || t_cross > script.duration_s)
        return std::nullopt;
    return t_cross;
}

}  // namespace rfimon
