#include "rfimon/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "rfimon/errors.hpp"

namespace rfimon {
namespace io {

using nlohmann::json;

namespace {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Unreadable("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Unreadable("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

json ellipse_to_json(const ThresholdEllipse& e) {
    return json{{"center", {e.center.x, e.center.y}},
                {"semi_axes", {e.semi_axes.x, e.semi_axes.y}},
                {"rotation", e.rotation}};
}

ThresholdEllipse ellipse_from_json(const json& j) {
    ThresholdEllipse e;
    e.center = {j.at("center")[0], j.at("center")[1]};
    e.semi_axes = {j.at("semi_axes")[0], j.at("semi_axes")[1]};
    e.rotation = j.at("rotation");
    return e;
}

}  // namespace

CalibrationConfig load_calibration(const std::string& path) {
    const json j = read_json(path);
    CalibrationConfig cfg;
    cfg.agc_factor = j.value("agc_factor", cfg.agc_factor);
    cfg.ref_temp_k = j.value("ref_temp_k", cfg.ref_temp_k);
    if (j.contains("temp_curve")) cfg.temp_curve = j.at("temp_curve").get<std::vector<double>>();
    if (j.contains("unit_curve")) {
        const auto& u = j.at("unit_curve");
        cfg.unit_curve.a = u.value("a", cfg.unit_curve.a);
        cfg.unit_curve.b = u.value("b", cfg.unit_curve.b);
        cfg.unit_curve.lo = u.value("lo", cfg.unit_curve.lo);
        cfg.unit_curve.hi = u.value("hi", cfg.unit_curve.hi);
    }
    cfg.chain_gain_db = j.value("chain_gain_db", cfg.chain_gain_db);
    if (j.contains("weights")) {
        for (const auto& [name, wj] : j.at("weights").items()) {
            WeightTable w;
            w.bin_center_freqs = wj.at("bin_center_freqs").get<std::vector<double>>();
            w.fractions = wj.at("fractions").get<std::vector<double>>();
            cfg.weights[name] = std::move(w);
        }
    }
    if (cfg.agc_factor <= 0.0) throw Error("agc_factor must be positive");
    if (cfg.ref_temp_k < 250.0 || cfg.ref_temp_k > 330.0)
        throw Error("ref_temp_k outside [250, 330]");
    if (cfg.unit_curve.a <= 0.0) throw Error("unit_curve.a must be positive");
    return cfg;
}

void save_calibration(const CalibrationConfig& cfg, const std::string& path) {
    json j;
    j["agc_factor"] = cfg.agc_factor;
    j["ref_temp_k"] = cfg.ref_temp_k;
    j["temp_curve"] = cfg.temp_curve;
    j["unit_curve"] = {{"a", cfg.unit_curve.a},
                       {"b", cfg.unit_curve.b},
                       {"lo", cfg.unit_curve.lo},
                       {"hi", cfg.unit_curve.hi}};
    j["chain_gain_db"] = cfg.chain_gain_db;
    json weights = json::object();
    for (const auto& [name, w] : cfg.weights)
        weights[name] = {{"bin_center_freqs", w.bin_center_freqs}, {"fractions", w.fractions}};
    j["weights"] = weights;
    write_json(j, path);
}

std::string model_hash(const NominalModel& model) {
    // canonical digest over the statistical content; metadata excluded
    std::ostringstream os;
    os.precision(12);
    os << model.mean.x << "," << model.mean.y << ";" << model.covariance.xx << ","
       << model.covariance.xy << "," << model.covariance.yy << ";";
    std::vector<std::pair<GridCell, double>> cells(model.grid.begin(), model.grid.end());
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
        return std::tie(a.first.i, a.first.j) < std::tie(b.first.i, b.first.j);
    });
    for (const auto& [c, m] : cells) os << c.i << ":" << c.j << ":" << m << ";";
    os << model.elevation_lo << "," << model.elevation_hi;
    return fnv1a_hex(os.str());
}

void save_model(const NominalModel& model, const std::string& path) {
    json j;
    j["mean"] = {model.mean.x, model.mean.y};
    j["covariance"] = {model.covariance.xx, model.covariance.xy, model.covariance.yy};
    std::vector<std::pair<GridCell, double>> cells(model.grid.begin(), model.grid.end());
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
        return std::tie(a.first.i, a.first.j) < std::tie(b.first.i, b.first.j);
    });
    json grid = json::array();
    for (const auto& [c, m] : cells) grid.push_back({c.i, c.j, m});
    j["grid"] = grid;
    j["elevation_bin"] = {model.elevation_lo, model.elevation_hi};
    j["sat_filter"] = model.sat_filter;
    j["site_offset"] = {model.site_offset.d_rx_power, model.site_offset.d_cn0};
    j["hash"] = model_hash(model);
    write_json(j, path);
}

NominalModel load_model(const std::string& path) {
    const json j = read_json(path);
    NominalModel model;
    model.mean = {j.at("mean")[0], j.at("mean")[1]};
    model.covariance = {j.at("covariance")[0], j.at("covariance")[1], j.at("covariance")[2]};
    for (const auto& cell : j.at("grid"))
        model.grid[{cell[0].get<int>(), cell[1].get<int>()}] = cell[2].get<double>();
    model.elevation_lo = j.at("elevation_bin")[0];
    model.elevation_hi = j.at("elevation_bin")[1];
    model.sat_filter = j.at("sat_filter").get<std::set<std::string>>();
    model.site_offset = {j.at("site_offset")[0], j.at("site_offset")[1]};
    return model;
}

void save_regions(const RegionMap& regions, const std::string& hash, const std::string& path) {
    json j;
    j["ellipse"] = ellipse_to_json(regions.ellipse);
    j["cn0_floor"] = regions.cn0_floor;
    j["jam_slope"] = regions.jam_slope;
    j["spoof_anchor"] = {regions.spoof_anchor.x, regions.spoof_anchor.y};
    j["noise_floor"] = regions.noise_floor;
    j["band"] = {regions.band_lo, regions.band_hi};
    j["model_hash"] = hash;
    write_json(j, path);
}

RegionFile load_regions(const std::string& path) {
    const json j = read_json(path);
    RegionFile f;
    f.regions.ellipse = ellipse_from_json(j.at("ellipse"));
    f.regions.cn0_floor = j.at("cn0_floor");
    f.regions.jam_slope = j.at("jam_slope");
    f.regions.spoof_anchor = {j.at("spoof_anchor")[0], j.at("spoof_anchor")[1]};
    f.regions.noise_floor = j.at("noise_floor");
    f.regions.band_lo = j.at("band")[0];
    f.regions.band_hi = j.at("band")[1];
    f.model_hash = j.at("model_hash");
    return f;
}

void save_optimizer_report(const OptimizerReport& report, const FalsificationConfig& cfg,
                           const std::string& path) {
    json j;
    j["ellipse"] = ellipse_to_json(report.ellipse);
    j["achieved_fpr"] = {{"p_hat", report.achieved_fpr.p_hat},
                         {"std_err", report.achieved_fpr.std_err},
                         {"rollouts_used", report.achieved_fpr.rollouts_used}};
    j["area"] = report.area;
    j["iterations"] = report.iterations;
    j["converged"] = report.converged;
    j["seed"] = report.seed;
    j["config"] = {{"rollouts", cfg.rollouts},
                   {"proposal_scale", cfg.proposal_scale},
                   {"target_fpr", cfg.target_fpr},
                   {"quantize", cfg.quantize}};
    write_json(j, path);
}

namespace {
EventKind event_kind_from_name(const std::string& s) {
    if (s == "step_jam") return EventKind::StepJam;
    if (s == "ramp_jam") return EventKind::RampJam;
    if (s == "spoof") return EventKind::Spoof;
    if (s == "block") return EventKind::Block;
    throw Error("unknown event kind: " + s);
}
const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::StepJam: return "step_jam";
        case EventKind::RampJam: return "ramp_jam";
        case EventKind::Spoof: return "spoof";
        case EventKind::Block: return "block";
    }
    return "?";
}
}  // namespace

ScenarioScript load_scenario(const std::string& path) {
    const json j = read_json(path);
    ScenarioScript s;
    s.duration_s = j.at("duration_s");
    s.epoch_rate_hz = j.value("epoch_rate_hz", 1.0);
    const auto& b = j.at("baseline");
    s.baseline.rx_power = b.at("rx_power");
    s.baseline.cn0 = b.at("cn0");
    s.baseline.sigma_rx = b.value("sigma_rx", 0.0);
    s.baseline.sigma_cn0 = b.value("sigma_cn0", 0.0);
    s.sat = j.value("sat", s.sat);
    s.elevation_deg = j.value("elevation_deg", s.elevation_deg);
    s.tracking_floor = j.value("tracking_floor", s.tracking_floor);
    s.loss_hysteresis = j.value("loss_hysteresis", s.loss_hysteresis);
    for (const auto& e : j.value("events", json::array())) {
        Event ev;
        ev.kind = event_kind_from_name(e.at("kind"));
        ev.t_start = e.at("t_start");
        ev.t_end = e.at("t_end");
        ev.power_db = e.value("power_db", 0.0);
        ev.ramp_rate = e.value("ramp_rate", 0.0);
        ev.spoof_cn0 = e.value("spoof_cn0", 0.0);
        ev.spoof_power_db = e.value("spoof_power_db", 0.0);
        ev.jam_power_db = e.value("jam_power_db", 0.0);
        ev.lag_s = e.value("lag_s", 0.0);
        if (!(ev.t_start < ev.t_end) || ev.t_end > s.duration_s)
            throw Error("event window invalid");
        s.events.push_back(ev);
    }
    return s;
}

void save_scenario(const ScenarioScript& s, const std::string& path) {
    json j;
    j["duration_s"] = s.duration_s;
    j["epoch_rate_hz"] = s.epoch_rate_hz;
    j["baseline"] = {{"rx_power", s.baseline.rx_power},
                     {"cn0", s.baseline.cn0},
                     {"sigma_rx", s.baseline.sigma_rx},
                     {"sigma_cn0", s.baseline.sigma_cn0}};
    j["sat"] = s.sat;
    j["elevation_deg"] = s.elevation_deg;
    j["tracking_floor"] = s.tracking_floor;
    j["loss_hysteresis"] = s.loss_hysteresis;
    json events = json::array();
    for (const auto& ev : s.events) {
        json e;
        e["kind"] = event_kind_name(ev.kind);
        e["t_start"] = ev.t_start;
        e["t_end"] = ev.t_end;
        e["power_db"] = ev.power_db;
        e["ramp_rate"] = ev.ramp_rate;
        e["spoof_cn0"] = ev.spoof_cn0;
        e["spoof_power_db"] = ev.spoof_power_db;
        e["jam_power_db"] = ev.jam_power_db;
        e["lag_s"] = ev.lag_s;
        events.push_back(e);
    }
    j["events"] = events;
    write_json(j, path);
}

void save_metric_csv(const std::vector<MetricPoint>& points, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Unreadable("cannot write " + path);
    out << "t,sat,rx_power_dbw_hz,cn0_dbhz,elev_deg\n";
    out.precision(10);
    for (const auto& p : points) {
        out << p.t << "," << p.sat << "," << p.rx_power << ",";
        if (p.cn0) out << *p.cn0;
        out << "," << p.elevation_deg << "\n";
    }
}

namespace {
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}
}  // namespace

std::vector<MetricPoint> load_metric_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Unreadable("cannot open " + path);
    std::vector<MetricPoint> points;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 5) throw Error("bad metric CSV row: " + line);
        MetricPoint p;
        p.t = std::stod(f[0]);
        p.sat = f[1];
        p.rx_power = std::stod(f[2]);
        if (!f[3].empty()) p.cn0 = std::stod(f[3]);
        p.elevation_deg = std::stod(f[4]);
        points.push_back(std::move(p));
    }
    return points;
}

void save_classified_csv(const std::vector<ClassifiedPoint>& points, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Unreadable("cannot write " + path);
    out << "t,sat,rx_power,cn0,label,margin\n";
    out.precision(10);
    for (const auto& cp : points) {
        out << cp.point.t << "," << cp.point.sat << "," << cp.point.rx_power << ",";
        if (cp.point.cn0) out << *cp.point.cn0;
        out << "," << label_name(cp.label);
        if (cp.loss_attribution) out << "/" << label_name(*cp.loss_attribution);
        out << "," << cp.margin << "\n";
    }
}

std::vector<ClassifiedRow> load_classified_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Unreadable("cannot open " + path);
    std::vector<ClassifiedRow> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 6) throw Error("bad classified CSV row: " + line);
        ClassifiedRow r;
        r.point.t = std::stod(f[0]);
        r.point.sat = f[1];
        r.point.rx_power = std::stod(f[2]);
        if (!f[3].empty()) r.point.cn0 = std::stod(f[3]);
        std::string lbl = f[4];
        if (const auto slash = lbl.find('/'); slash != std::string::npos) {
            r.loss_attribution = label_from_name(lbl.substr(slash + 1));
            lbl = lbl.substr(0, slash);
        }
        r.label = label_from_name(lbl);
        r.margin = std::stod(f[5]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void save_truth_csv(const std::vector<MetricPoint>& points, const std::vector<Label>& truth,
                    const std::string& path) {
    if (points.size() != truth.size()) throw LengthMismatch("points/truth size mismatch");
    std::ofstream out(path);
    if (!out) throw Unreadable("cannot write " + path);
    out << "t,label\n";
    out.precision(10);
    for (std::size_t i = 0; i < points.size(); ++i)
        out << points[i].t << "," << label_name(truth[i]) << "\n";
}

std::vector<std::pair<double, Label>> load_truth_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Unreadable("cannot open " + path);
    std::vector<std::pair<double, Label>> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 2) throw Error("bad truth CSV row: " + line);
        rows.emplace_back(std::stod(f[0]), label_from_name(f[1]));
    }
    return rows;
}

void save_detection_report(const std::vector<std::pair<std::string, DetectionReport>>& rows,
                           const std::string& path) {
    json j;
    json windows = json::array();
    for (const auto& [name, r] : rows) {
        json w;
        w["window"] = name;
        w["counts"] = {{"tp", r.counts.tp},
                       {"fp", r.counts.fp},
                       {"fn", r.counts.fn},
                       {"tn", r.counts.tn}};
        if (r.sensitivity) w["sensitivity_pct"] = round_pct_1dp(*r.sensitivity);
        if (r.specificity) w["specificity_pct"] = round_pct_1dp(*r.specificity);
        if (r.accuracy) w["accuracy_pct"] = round_pct_1dp(*r.accuracy);
        windows.push_back(w);
    }
    j["windows"] = windows;
    write_json(j, path);
}

}  // namespace io
}  // namespace rfimon
