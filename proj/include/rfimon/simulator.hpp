#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfimon/regions.hpp"
#include "rfimon/types.hpp"

namespace rfimon {

enum class EventKind { StepJam, RampJam, Spoof, Block };

struct Event {
    EventKind kind = EventKind::StepJam;
    double t_start = 0.0;
    double t_end = 0.0;
    /// StepJam: jammer power in dB above baseline noise.
    /// Block: C/N0 attenuation in dB.
    double power_db = 0.0;
    /// RampJam: growth rate of the excess received power, dB/s.
    double ramp_rate = 0.0;
    /// Spoof: counterfeit-signal C/N0 and powers above baseline noise.
    double spoof_cn0 = 0.0;
    double spoof_power_db = 0.0;
    double jam_power_db = 0.0;
    /// Receiver response lag: observables switch this many seconds after the
    /// event edge while truth switches exactly at the edge.
    double lag_s = 0.0;
};

struct Baseline {
    double rx_power = -200.0;  // dBW/Hz noise floor N0
    double cn0 = 45.0;         // dB-Hz
    double sigma_rx = 0.0;     // per-axis Gaussian noise, dB
    double sigma_cn0 = 0.0;
};

struct ScenarioScript {
    double duration_s = 0.0;
    double epoch_rate_hz = 1.0;
    Baseline baseline;
    std::vector<Event> events;  // non-overlapping in time
    std::string sat = "S131";
    double elevation_deg = 46.0;
    double tracking_floor = 27.0;    // C/N0 below floor - hysteresis drops lock
    double loss_hysteresis = 2.0;
};

struct LabeledStream {
    std::vector<MetricPoint> points;
    std::vector<Label> truth;  // aligned 1:1
};

/// Render the script into an observable stream with aligned ground truth.
/// Jamming moves along the slope -1 path; interference adds in linear power.
LabeledStream render(const ScenarioScript& script, std::uint64_t seed);

/// First time the noiseless ramp trajectory exits the detection ellipse
/// (closed form). Throws NoRamp when the script has no RampJam; returns
/// nullopt when the ramp never exits within its window.
std::optional<double> ramp_crossing_time(const ScenarioScript& script, const RegionMap& regions);

}  // namespace rfimon
