#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rfimon/types.hpp"

namespace rfimon {

/// Unit-power spectral density of a signal, normalized over [band_lo, band_hi].
struct SignalPsd {
    std::string signal_name;
    double band_lo = 0.0;
    double band_hi = 0.0;
    std::function<double(double)> unit_psd;  // 1/Hz
};

/// GPS L1 C/A BPSK sinc^2 PSD normalized over the given band.
SignalPsd gps_l1ca_psd(double band_lo = 1572.75e6, double band_hi = 1577.75e6);

struct WeightTable {
    std::vector<double> bin_center_freqs;  // Hz
    std::vector<double> fractions;         // unitless, >= 0
};

/// Table of GPS L1 C/A power fractions per 0.5 MHz, 1573.0..1577.5 MHz.
/// Shipped verbatim (sums to 1.001, intentionally not renormalized).
WeightTable l1ca_weight_table();

struct UnitCurve {
    double a = 1.0;     // dB per device unit, > 0
    double b = -100.0;  // dBW/Hz intercept
    double lo = -1e9;   // saturation bounds on the device-unit input
    double hi = 1e9;
};

struct CalibrationConfig {
    double agc_factor = 3.7;
    double ref_temp_k = 300.0;
    std::vector<double> temp_curve{0.0};  // dB vs Kelvin, ascending degree
    UnitCurve unit_curve;
    double chain_gain_db = 24.9;  // antenna + LNA gain minus cable loss
    std::map<std::string, WeightTable> weights;
};

/// Remove the receiver's internal gain: every bin drops by agc_factor * pga.
/// A record may be adjusted once; the flag guards double application.
SpectrumRecord adjust_agc(const SpectrumRecord& record, const CalibrationConfig& cfg);

struct TempFit {
    std::vector<double> coeffs;  // ascending degree
    double residual_rms = 0.0;
};

/// Least-squares polynomial fit of the gain drift against temperature.
TempFit fit_temp_curve(std::span<const std::pair<double, double>> samples, int degree);

/// Refer bin powers to the configured reference temperature.
SpectrumRecord apply_temp_cal(const SpectrumRecord& record, const CalibrationConfig& cfg);

/// Integrate the normalized PSD over each bin to get per-bin power fractions.
WeightTable compute_weights(const SignalPsd& psd, std::span<const double> bin_centers,
                            double bin_width);

/// Collapse a spectrum record into one device-unit dB value:
/// 10 log10 sum_i 10^(P_i/10) f_i.
double aggregate_power(const SpectrumRecord& record, const WeightTable& weights);

struct DbwResult {
    double value = 0.0;  // dBW/Hz
    bool saturated = false;
};

/// Affine device-unit -> dBW/Hz conversion, minus the antenna chain gain.
DbwResult to_dbw_hz(double span_value, const CalibrationConfig& cfg);

struct PairResult {
    std::vector<MetricPoint> points;
    std::size_t dropped = 0;
};

/// Pair each epoch with the nearest power sample inside the window.
/// Ties break to the earlier sample; unpaired epochs are counted, not errors.
PairResult pair_metric(std::span<const ReceiverEpoch> epochs,
                       std::span<const std::pair<double, double>> powers,  // (t, rx_power)
                       double window_s = 1.0);

}  // namespace rfimon
