#include "rfimon/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rfimon/errors.hpp"
#include "rfimon/util.hpp"

namespace rfimon {

SignalPsd gps_l1ca_psd(double band_lo, double band_hi) {
    constexpr double kCenterHz = 1575.42e6;
    constexpr double kChipRate = 1.023e6;
    auto sinc2 = [](double f) {
        const double x = M_PI * f / kChipRate;
        if (std::fabs(x) < 1e-12) return 1.0 / kChipRate;
        const double s = std::sin(x) / x;
        return s * s / kChipRate;
    };
    const double norm = integrate([&](double f) { return sinc2(f - kCenterHz); },
                                  band_lo, band_hi, 1e-12);
    SignalPsd psd;
    psd.signal_name = "GPS_L1CA";
    psd.band_lo = band_lo;
    psd.band_hi = band_hi;
    psd.unit_psd = [sinc2, norm](double f) { return sinc2(f - kCenterHz) / norm; };
    return psd;
}

WeightTable l1ca_weight_table() {
    WeightTable w;
    for (int i = 0; i < 10; ++i) w.bin_center_freqs.push_back(1573.0e6 + 0.5e6 * i);
    w.fractions = {0.007, 0.005, 0.020, 0.020, 0.268, 0.492, 0.158, 0.009, 0.019, 0.003};
    return w;
}

SpectrumRecord adjust_agc(const SpectrumRecord& record, const CalibrationConfig& cfg) {
    if (record.agc_adjusted) throw AlreadyAdjusted("pga level already consumed");
    SpectrumRecord out = record;
    const double offset = cfg.agc_factor * record.pga;
    for (double& p : out.bins_db) p -= offset;
    out.pga = 0.0;
    out.agc_adjusted = true;
    return out;
}

TempFit fit_temp_curve(std::span<const std::pair<double, double>> samples, int degree) {
    if (degree < 0) throw Underdetermined("negative degree");
    const std::size_t n = samples.size();
    const std::size_t k = static_cast<std::size_t>(degree) + 1;
    if (n < k) throw Underdetermined("need at least degree+1 samples");

    std::set<double> temps;
    for (const auto& [t, v] : samples) temps.insert(t);
    if (temps.size() < k) throw DegenerateTemps("need degree+1 distinct temperatures");

    // normal equations (A^T A) c = A^T y, centered at 300 K for conditioning,
    // then expanded back to plain ascending coefficients in T
    constexpr double kCenter = 300.0;
    std::vector<std::vector<double>> ata(k, std::vector<double>(k, 0.0));
    std::vector<double> aty(k, 0.0);
    for (const auto& [t, y] : samples) {
        std::vector<double> row(k);
        row[0] = 1.0;
        for (std::size_t i = 1; i < k; ++i) row[i] = row[i - 1] * (t - kCenter);
        for (std::size_t i = 0; i < k; ++i) {
            aty[i] += row[i] * y;
            for (std::size_t j = 0; j < k; ++j) ata[i][j] += row[i] * row[j];
        }
    }
    // Gaussian elimination with partial pivoting
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::fabs(ata[r][col]) > std::fabs(ata[piv][col])) piv = r;
        std::swap(ata[col], ata[piv]);
        std::swap(aty[col], aty[piv]);
        if (std::fabs(ata[col][col]) < 1e-30) throw DegenerateTemps("singular normal equations");
        for (std::size_t r = col + 1; r < k; ++r) {
            const double f = ata[r][col] / ata[col][col];
            for (std::size_t c = col; c < k; ++c) ata[r][c] -= f * ata[col][c];
            aty[r] -= f * aty[col];
        }
    }
    std::vector<double> centered(k);
    for (std::size_t r = k; r-- > 0;) {
        double s = aty[r];
        for (std::size_t c = r + 1; c < k; ++c) s -= ata[r][c] * centered[c];
        centered[r] = s / ata[r][r];
    }

    // expand c_i (T - 300)^i into plain powers of T
    TempFit fit;
    fit.coeffs.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        double binom = 1.0;  // C(i, j)
        for (std::size_t j = 0; j <= i; ++j) {
            const double shift_pow = std::pow(-kCenter, static_cast<double>(i - j));
            fit.coeffs[j] += centered[i] * binom * shift_pow;
            binom = binom * static_cast<double>(i - j) / static_cast<double>(j + 1);
        }
    }

    double ss = 0.0;
    for (const auto& [t, y] : samples) {
        const double r = y - polyval(fit.coeffs, t);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

SpectrumRecord apply_temp_cal(const SpectrumRecord& record, const CalibrationConfig& cfg) {
    if (record.temp_k < 200.0 || record.temp_k > 350.0)
        throw TempOutOfRange("temperature outside [200, 350] K");
    SpectrumRecord out = record;
    const double delta = polyval(cfg.temp_curve, record.temp_k) -
                         polyval(cfg.temp_curve, cfg.ref_temp_k);
    for (double& p : out.bins_db) p -= delta;
    out.temp_k = cfg.ref_temp_k;
    return out;
}

WeightTable compute_weights(const SignalPsd& psd, std::span<const double> bin_centers,
                            double bin_width) {
    if (bin_centers.empty()) throw BandNotCovered("no bins");
    const double lo = bin_centers.front() - bin_width / 2.0;
    const double hi = bin_centers.back() + bin_width / 2.0;
    if (lo > psd.band_lo + 1.0 || hi < psd.band_hi - 1.0)
        throw BandNotCovered("bins do not cover the signal band");

    WeightTable w;
    w.bin_center_freqs.assign(bin_centers.begin(), bin_centers.end());
    w.fractions.reserve(bin_centers.size());
    for (double c : bin_centers)
        w.fractions.push_back(
            integrate(psd.unit_psd, c - bin_width / 2.0, c + bin_width / 2.0, 1e-7));
    return w;
}

double aggregate_power(const SpectrumRecord& record, const WeightTable& weights) {
    if (record.bin_count() != weights.bin_center_freqs.size())
        throw BinMisalignment("bin count differs from weight table");
    for (std::size_t i = 0; i < record.bin_count(); ++i)
        if (std::fabs(record.bin_center(i) - weights.bin_center_freqs[i]) > 1e3)
            throw BinMisalignment("bin centers differ by more than 1 kHz");

    double lin = 0.0;
    for (std::size_t i = 0; i < record.bin_count(); ++i)
        lin += db_to_lin(record.bins_db[i]) * weights.fractions[i];
    return lin_to_db(lin);
}

DbwResult to_dbw_hz(double span_value, const CalibrationConfig& cfg) {
    DbwResult r;
    double v = span_value;
    if (v < cfg.unit_curve.lo) {
        v = cfg.unit_curve.lo;
        r.saturated = true;
    } else if (v > cfg.unit_curve.hi) {
        v = cfg.unit_curve.hi;
        r.saturated = true;
    }
    r.value = cfg.unit_curve.a * v + cfg.unit_curve.b - cfg.chain_gain_db;
    return r;
}

PairResult pair_metric(std::span<const ReceiverEpoch> epochs,
                       std::span<const std::pair<double, double>> powers, double window_s) {
    PairResult result;
    std::size_t k = 0;
    for (const auto& e : epochs) {
        while (k + 1 < powers.size() && powers[k + 1].first <= e.t) ++k;
        // candidates: powers[k] (<= t, or first) and powers[k+1]
        double best_dt = std::numeric_limits<double>::infinity();
        std::size_t best = 0;
        for (std::size_t c = k; c < std::min(k + 2, powers.size()); ++c) {
            const double dt = std::fabs(powers[c].first - e.t);
            if (dt < best_dt) {  // strict: equidistant keeps the earlier sample
                best_dt = dt;
                best = c;
            }
        }
        if (powers.empty() || best_dt > window_s) {
            ++result.dropped;
            continue;
        }
        result.points.push_back(
            {e.t, e.sat, powers[best].second, e.cn0, e.elevation_deg});
    }
    return result;
}

}  // namespace rfimon
