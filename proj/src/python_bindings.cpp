#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rfimon/calibration.hpp"
#include "rfimon/evaluation.hpp"
#include "rfimon/jsonl.hpp"
#include "rfimon/nominal.hpp"
#include "rfimon/optimizer.hpp"
#include "rfimon/regions.hpp"
#include "rfimon/simulator.hpp"
#include "rfimon/ubx.hpp"

namespace py = pybind11;
using namespace rfimon;

PYBIND11_MODULE(_core, m) {
    m.doc() = "GNSS interference monitoring core: calibration, nominal-region "
              "modeling, threshold optimization and classification";

    py::class_<SpectrumRecord>(m, "SpectrumRecord")
        .def(py::init<>())
        .def_readwrite("t", &SpectrumRecord::t)
        .def_readwrite("f0_hz", &SpectrumRecord::f0_hz)
        .def_readwrite("df_hz", &SpectrumRecord::df_hz)
        .def_readwrite("bins_db", &SpectrumRecord::bins_db)
        .def_readwrite("pga", &SpectrumRecord::pga)
        .def_readwrite("temp_k", &SpectrumRecord::temp_k);

    py::class_<ReceiverEpoch>(m, "ReceiverEpoch")
        .def(py::init<>())
        .def_readwrite("t", &ReceiverEpoch::t)
        .def_readwrite("sat", &ReceiverEpoch::sat)
        .def_readwrite("cn0", &ReceiverEpoch::cn0)
        .def_readwrite("elevation_deg", &ReceiverEpoch::elevation_deg);

    py::class_<MetricPoint>(m, "MetricPoint")
        .def(py::init([](double t, std::string sat, double rx_power,
                         std::optional<double> cn0, double elev) {
                 return MetricPoint{t, std::move(sat), rx_power, cn0, elev};
             }),
             py::arg("t") = 0.0, py::arg("sat") = "S131", py::arg("rx_power") = 0.0,
             py::arg("cn0") = std::nullopt, py::arg("elevation_deg") = 46.0)
        .def_readwrite("t", &MetricPoint::t)
        .def_readwrite("sat", &MetricPoint::sat)
        .def_readwrite("rx_power", &MetricPoint::rx_power)
        .def_readwrite("cn0", &MetricPoint::cn0)
        .def_readwrite("elevation_deg", &MetricPoint::elevation_deg);

    py::enum_<Label>(m, "Label")
        .value("Nominal", Label::Nominal)
        .value("Jamming", Label::Jamming)
        .value("Blocked", Label::Blocked)
        .value("Spoofing", Label::Spoofing)
        .value("Unrealistic", Label::Unrealistic)
        .value("SignalLoss", Label::SignalLoss);

    // frame parsing
    py::class_<RawFrame>(m, "RawFrame")
        .def(py::init<>())
        .def_readwrite("msg_class", &RawFrame::msg_class)
        .def_readwrite("msg_id", &RawFrame::msg_id)
        .def_property(
            "payload",
            [](const RawFrame& f) {
                return py::bytes(reinterpret_cast<const char*>(f.payload.data()),
                                 f.payload.size());
            },
            [](RawFrame& f, py::bytes b) {
                const std::string s = b;
                f.payload.assign(s.begin(), s.end());
            });
    m.def("parse_frame", [](py::bytes b) {
        const std::string s = b;
        return parse_frame(std::span<const std::uint8_t>(
            reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
    });
    m.def("encode_frame", [](const RawFrame& f) {
        const auto v = encode_frame(f);
        return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
    });

    // calibration
    py::class_<WeightTable>(m, "WeightTable")
        .def(py::init<>())
        .def_readwrite("bin_center_freqs", &WeightTable::bin_center_freqs)
        .def_readwrite("fractions", &WeightTable::fractions);
    py::class_<UnitCurve>(m, "UnitCurve")
        .def(py::init<>())
        .def_readwrite("a", &UnitCurve::a)
        .def_readwrite("b", &UnitCurve::b)
        .def_readwrite("lo", &UnitCurve::lo)
        .def_readwrite("hi", &UnitCurve::hi);
    py::class_<CalibrationConfig>(m, "CalibrationConfig")
        .def(py::init<>())
        .def_readwrite("agc_factor", &CalibrationConfig::agc_factor)
        .def_readwrite("ref_temp_k", &CalibrationConfig::ref_temp_k)
        .def_readwrite("temp_curve", &CalibrationConfig::temp_curve)
        .def_readwrite("unit_curve", &CalibrationConfig::unit_curve)
        .def_readwrite("chain_gain_db", &CalibrationConfig::chain_gain_db);
    m.def("l1ca_weight_table", &l1ca_weight_table);
    m.def("adjust_agc", &adjust_agc);
    m.def("apply_temp_cal", &apply_temp_cal);
    m.def(
        "compute_l1ca_weights",
        [](std::vector<double> centers, double width) {
            return compute_weights(gps_l1ca_psd(), centers, width);
        },
        py::arg("bin_centers"), py::arg("bin_width") = 500e3);
    m.def("aggregate_power", &aggregate_power);
    m.def("to_dbw_hz",
          [](double v, const CalibrationConfig& cfg) { return to_dbw_hz(v, cfg).value; });

    // nominal model
    py::class_<NominalModel>(m, "NominalModel")
        .def_property_readonly("mean",
                               [](const NominalModel& mo) {
                                   return std::make_pair(mo.mean.x, mo.mean.y);
                               })
        .def_property_readonly("covariance", [](const NominalModel& mo) {
            return std::make_tuple(mo.covariance.xx, mo.covariance.xy, mo.covariance.yy);
        });
    m.def(
        "fit_nominal",
        [](const std::vector<MetricPoint>& pts, double elev_lo, double elev_hi,
           const std::set<std::string>& sats) { return fit_nominal(pts, elev_lo, elev_hi, sats); },
        py::arg("points"), py::arg("elevation_lo") = 0.0, py::arg("elevation_hi") = 90.0,
        py::arg("sat_filter") = std::set<std::string>{});
    m.def("cell_of", [](double rx, double cn0) {
        const GridCell c = cell_of(Vec2{rx, cn0});
        return std::make_pair(c.i, c.j);
    });

    // regions and classification
    py::class_<ThresholdEllipse>(m, "ThresholdEllipse")
        .def(py::init([](std::pair<double, double> center, std::pair<double, double> axes,
                         double rot) {
                 return ThresholdEllipse{{center.first, center.second},
                                         {axes.first, axes.second},
                                         rot};
             }),
             py::arg("center"), py::arg("semi_axes"), py::arg("rotation") = 0.0)
        .def("contains",
             [](const ThresholdEllipse& e, double x, double y) { return e.contains({x, y}); });
    m.def("ellipse_area", &ellipse_area);

    py::class_<RegionMap>(m, "RegionMap")
        .def_readonly("cn0_floor", &RegionMap::cn0_floor)
        .def_readonly("jam_slope", &RegionMap::jam_slope)
        .def_readonly("noise_floor", &RegionMap::noise_floor)
        .def_property_readonly("spoof_anchor", [](const RegionMap& r) {
            return std::make_pair(r.spoof_anchor.x, r.spoof_anchor.y);
        });
    py::class_<RegionConfig>(m, "RegionConfig")
        .def(py::init<>())
        .def_readwrite("cn0_floor", &RegionConfig::cn0_floor)
        .def_readwrite("jam_slope", &RegionConfig::jam_slope);
    m.def("build_regions", &build_regions, py::arg("model"), py::arg("ellipse"),
          py::arg("config") = RegionConfig{});
    py::class_<ClassifiedPoint>(m, "ClassifiedPoint")
        .def_readonly("label", &ClassifiedPoint::label)
        .def_readonly("loss_attribution", &ClassifiedPoint::loss_attribution)
        .def_readonly("margin", &ClassifiedPoint::margin);
    m.def("classify", &classify);

    // threshold optimization
    py::class_<FalsificationConfig>(m, "FalsificationConfig")
        .def(py::init<>())
        .def_readwrite("rollouts", &FalsificationConfig::rollouts)
        .def_readwrite("proposal_scale", &FalsificationConfig::proposal_scale)
        .def_readwrite("target_fpr", &FalsificationConfig::target_fpr)
        .def_readwrite("seed", &FalsificationConfig::seed)
        .def_readwrite("quantize", &FalsificationConfig::quantize);
    py::class_<FprEstimate>(m, "FprEstimate")
        .def_readonly("p_hat", &FprEstimate::p_hat)
        .def_readonly("std_err", &FprEstimate::std_err)
        .def_readonly("rollouts_used", &FprEstimate::rollouts_used);
    m.def("estimate_fpr", &estimate_fpr);
    py::class_<OptimizerReport>(m, "OptimizerReport")
        .def_readonly("ellipse", &OptimizerReport::ellipse)
        .def_readonly("area", &OptimizerReport::area)
        .def_readonly("iterations", &OptimizerReport::iterations)
        .def_readonly("converged", &OptimizerReport::converged)
        .def_readonly("achieved_fpr", &OptimizerReport::achieved_fpr);
    py::class_<SimplexConfig>(m, "SimplexConfig")
        .def(py::init<>())
        .def_readwrite("tol", &SimplexConfig::tol)
        .def_readwrite("max_iter", &SimplexConfig::max_iter);
    m.def("optimize_threshold", &optimize_threshold, py::arg("model"), py::arg("config"),
          py::arg("simplex") = SimplexConfig{});

    // simulator
    py::enum_<EventKind>(m, "EventKind")
        .value("StepJam", EventKind::StepJam)
        .value("RampJam", EventKind::RampJam)
        .value("Spoof", EventKind::Spoof)
        .value("Block", EventKind::Block);
    py::class_<Event>(m, "Event")
        .def(py::init<>())
        .def_readwrite("kind", &Event::kind)
        .def_readwrite("t_start", &Event::t_start)
        .def_readwrite("t_end", &Event::t_end)
        .def_readwrite("power_db", &Event::power_db)
        .def_readwrite("ramp_rate", &Event::ramp_rate)
        .def_readwrite("spoof_cn0", &Event::spoof_cn0)
        .def_readwrite("spoof_power_db", &Event::spoof_power_db)
        .def_readwrite("jam_power_db", &Event::jam_power_db)
        .def_readwrite("lag_s", &Event::lag_s);
    py::class_<Baseline>(m, "Baseline")
        .def(py::init<>())
        .def_readwrite("rx_power", &Baseline::rx_power)
        .def_readwrite("cn0", &Baseline::cn0)
        .def_readwrite("sigma_rx", &Baseline::sigma_rx)
        .def_readwrite("sigma_cn0", &Baseline::sigma_cn0);
    py::class_<ScenarioScript>(m, "ScenarioScript")
        .def(py::init<>())
        .def_readwrite("duration_s", &ScenarioScript::duration_s)
        .def_readwrite("epoch_rate_hz", &ScenarioScript::epoch_rate_hz)
        .def_readwrite("baseline", &ScenarioScript::baseline)
        .def_readwrite("events", &ScenarioScript::events)
        .def_readwrite("sat", &ScenarioScript::sat)
        .def_readwrite("elevation_deg", &ScenarioScript::elevation_deg);
    py::class_<LabeledStream>(m, "LabeledStream")
        .def_readonly("points", &LabeledStream::points)
        .def_readonly("truth", &LabeledStream::truth);
    m.def("render", &render);
    m.def("ramp_crossing_time", &ramp_crossing_time);

    // evaluation
    py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
        .def(py::init<>())
        .def_readwrite("tp", &ConfusionMatrix::tp)
        .def_readwrite("fp", &ConfusionMatrix::fp)
        .def_readwrite("fn", &ConfusionMatrix::fn)
        .def_readwrite("tn", &ConfusionMatrix::tn);
    py::class_<DetectionReport>(m, "DetectionReport")
        .def_readonly("counts", &DetectionReport::counts)
        .def_readonly("sensitivity", &DetectionReport::sensitivity)
        .def_readonly("specificity", &DetectionReport::specificity)
        .def_readonly("accuracy", &DetectionReport::accuracy);
    m.def("report_from_counts", &report_from_counts);
    m.def("score_detection",
          [](const std::vector<Label>& pred, const std::vector<Label>& truth,
             const std::set<Label>& positive) { return score_detection(pred, truth, positive); });
}
