#include "rfimon/jsonl.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rfimon/errors.hpp"

namespace rfimon {

using nlohmann::json;

namespace {

SpectrumRecord parse_spectrum(const json& j) {
    SpectrumRecord rec;
    rec.t = j.at("t").get<double>();
    rec.f0_hz = j.at("f0_hz").get<double>();
    rec.df_hz = j.at("df_hz").get<double>();
    rec.bins_db = j.at("bins").get<std::vector<double>>();
    rec.pga = j.at("pga").get<double>();
    rec.temp_k = j.at("temp_k").get<double>();
    if (rec.bins_db.empty()) throw Error("bins must be non-empty");
    if (rec.df_hz <= 0.0) throw Error("df_hz must be positive");
    if (rec.temp_k < 200.0 || rec.temp_k > 350.0) throw Error("temp_k outside [200, 350]");
    return rec;
}

ReceiverEpoch parse_epoch(const json& j) {
    ReceiverEpoch e;
    e.t = j.at("t").get<double>();
    e.sat = j.at("sat").get<std::string>();
    e.elevation_deg = j.at("elev").get<double>();
    if (j.contains("cn0")) {
        const double cn0 = j.at("cn0").get<double>();
        if (cn0 < 0.0 || cn0 > 65.0) throw Error("cn0 outside [0, 65]");
        e.cn0 = cn0;
    }
    if (e.elevation_deg < 0.0 || e.elevation_deg > 90.0)
        throw Error("elev outside [0, 90]");
    return e;
}

}  // namespace

StreamReadResult read_epoch_stream(std::istream& in) {
    StreamReadResult result;
    std::string line;
    std::size_t line_no = 0;
    double last_t = -std::numeric_limits<double>::infinity();
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const json j = json::parse(line);
            const std::string kind = j.at("kind").get<std::string>();
            double t;
            if (kind == "spectrum") {
                SpectrumRecord rec = parse_spectrum(j);
                t = rec.t;
                result.items.emplace_back(std::move(rec));
            } else if (kind == "epoch") {
                ReceiverEpoch e = parse_epoch(j);
                t = e.t;
                result.items.emplace_back(std::move(e));
            } else {
                throw Error("unknown kind: " + kind);
            }
            if (t < last_t)
                result.warnings.push_back("line " + std::to_string(line_no) +
                                          ": timestamp not monotone non-decreasing");
            last_t = std::max(last_t, t);
        } catch (const std::exception& e) {
            result.violations.push_back({line_no, e.what()});
        }
    }
    return result;
}

StreamReadResult read_epoch_stream_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Unreadable("cannot open " + path);
    return read_epoch_stream(in);
}

std::string to_jsonl(const SpectrumRecord& rec) {
    json j;
    j["t"] = rec.t;
    j["kind"] = "spectrum";
    j["f0_hz"] = rec.f0_hz;
    j["df_hz"] = rec.df_hz;
    j["bins"] = rec.bins_db;
    j["pga"] = rec.pga;
    j["temp_k"] = rec.temp_k;
    return j.dump();
}

std::string to_jsonl(const ReceiverEpoch& epoch) {
    json j;
    j["t"] = epoch.t;
    j["kind"] = "epoch";
    j["sat"] = epoch.sat;
    if (epoch.cn0) j["cn0"] = *epoch.cn0;
    j["elev"] = epoch.elevation_deg;
    return j.dump();
}

}  // namespace rfimon
