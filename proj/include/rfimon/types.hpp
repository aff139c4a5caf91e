#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rfimon {

/// One timestamped FFT snapshot from the receiver's spectrum monitor.
/// Bin powers are in device units (dB per bin) until calibration converts them.
struct SpectrumRecord {
    double t = 0.0;       // UTC seconds
    double f0_hz = 0.0;   // center frequency of the first bin
    double df_hz = 500e3; // uniform bin spacing
    std::vector<double> bins_db;
    double pga = 0.0;     // device-unit gain index
    double temp_k = 300.0;
    bool agc_adjusted = false;

    std::size_t bin_count() const { return bins_db.size(); }
    double bin_center(std::size_t i) const { return f0_hz + static_cast<double>(i) * df_hz; }
    std::vector<double> bin_centers() const {
        std::vector<double> c(bins_db.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = bin_center(i);
        return c;
    }
};

/// Per-epoch, per-satellite receiver observables. Absent cn0 encodes signal loss.
struct ReceiverEpoch {
    double t = 0.0;
    std::string sat;  // constellation-qualified id, e.g. "S131"
    std::optional<double> cn0;  // dB-Hz, in [0, 65] when present
    double elevation_deg = 0.0;
};

/// One point on the (received power, C/N0) plane.
struct MetricPoint {
    double t = 0.0;
    std::string sat;
    double rx_power = 0.0;  // dBW/Hz
    std::optional<double> cn0;  // dB-Hz
    double elevation_deg = 0.0;
};

enum class Label { Nominal, Jamming, Blocked, Spoofing, Unrealistic, SignalLoss };

const char* label_name(Label l);
Label label_from_name(const std::string& name);

}  // namespace rfimon
