// Command-line front-end: ingestion -> calibration -> model -> optimizer ->
// classifier -> evaluation, coupled through files with embedded content hashes.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "rfimon/calibration.hpp"
#include "rfimon/errors.hpp"
#include "rfimon/evaluation.hpp"
#include "rfimon/io.hpp"
#include "rfimon/jsonl.hpp"
#include "rfimon/nominal.hpp"
#include "rfimon/optimizer.hpp"
#include "rfimon/regions.hpp"
#include "rfimon/simulator.hpp"

namespace fs = std::filesystem;
using namespace rfimon;

namespace {

constexpr int kExitError = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitHashMismatch = 3;

void require_readable(const std::string& path) {
    if (!fs::exists(path)) throw Unreadable("input file does not exist: " + path);
}

void require_writable(const std::string& path, bool force) {
    if (fs::exists(path) && !force)
        throw Error("output exists, pass --force to overwrite: " + path);
}

std::string config_path(const std::string& given, const std::string& name) {
    if (!given.empty()) return given;
    if (const char* dir = std::getenv("RFIMON_CONFIG_DIR"))
        return (fs::path(dir) / name).string();
    return name;
}

struct Common {
    std::string out;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool force = false;
    bool strict = false;
};

void add_common(CLI::App* cmd, Common& c, bool needs_seed) {
    cmd->add_option("--out", c.out, "output path")->required();
    cmd->add_flag("--force", c.force, "overwrite existing outputs");
    cmd->add_flag("--strict", c.strict, "require an explicit --seed for randomized stages");
    if (needs_seed)
        cmd->add_option("--seed", c.seed, "random seed")->each([&](const std::string&) {
            c.seed_given = true;
        });
}

void check_seed(const Common& c) {
    if (c.strict && !c.seed_given)
        throw Error("--strict requires an explicit --seed");
}

int cmd_ingest(const std::vector<std::string>& inputs, const std::string& config,
               double window_s, const Common& c) {
    const std::string cfg_path = config_path(config, "calibration.json");
    require_readable(cfg_path);
    const CalibrationConfig cfg = io::load_calibration(cfg_path);
    require_writable(c.out, c.force);

    const WeightTable weights =
        cfg.weights.count("GPS_L1CA") ? cfg.weights.at("GPS_L1CA") : l1ca_weight_table();

    std::vector<ReceiverEpoch> epochs;
    std::vector<std::pair<double, double>> powers;
    std::size_t violations = 0;
    std::size_t saturated = 0;
    for (const auto& path : inputs) {
        require_readable(path);
        const StreamReadResult r = read_epoch_stream_file(path);
        violations += r.violations.size();
        for (const auto& v : r.violations)
            std::cerr << path << ":" << v.line << ": schema violation: " << v.message << "\n";
        for (const auto& w : r.warnings) std::cerr << path << ": warning: " << w << "\n";
        for (const auto& item : r.items) {
            if (std::holds_alternative<ReceiverEpoch>(item)) {
                epochs.push_back(std::get<ReceiverEpoch>(item));
            } else {
                const auto& rec = std::get<SpectrumRecord>(item);
                const SpectrumRecord cal = apply_temp_cal(adjust_agc(rec, cfg), cfg);
                const double span_value = aggregate_power(cal, weights);
                const DbwResult dbw = to_dbw_hz(span_value, cfg);
                if (dbw.saturated) ++saturated;
                powers.emplace_back(rec.t, dbw.value);
            }
        }
    }
    const PairResult paired = pair_metric(epochs, powers, window_s);
    io::save_metric_csv(paired.points, c.out);
    std::cerr << "ingest: " << paired.points.size() << " metric points, " << paired.dropped
              << " unpaired epochs dropped, " << violations << " schema violations, "
              << saturated << " saturated conversions\n";
    return 0;
}

int cmd_fit(const std::vector<std::string>& inputs, double elev_center, double elev_width,
            const std::vector<std::string>& sats, bool attested, const Common& c) {
    if (!attested)
        throw Error("nominal fitting requires --attest-nominal (training data must be "
                    "user-attested interference-free)");
    require_writable(c.out, c.force);
    std::vector<MetricPoint> points;
    for (const auto& path : inputs) {
        require_readable(path);
        const auto more = io::load_metric_csv(path);
        points.insert(points.end(), more.begin(), more.end());
    }
    const NominalModel model =
        fit_nominal(points, elev_center - elev_width / 2.0, elev_center + elev_width / 2.0,
                    {sats.begin(), sats.end()});
    io::save_model(model, c.out);
    std::cerr << "fit-nominal: mean (" << model.mean.x << ", " << model.mean.y << "), "
              << model.grid.size() << " grid cells, hash " << io::model_hash(model) << "\n";
    return 0;
}

int cmd_optimize(const std::string& model_path, double target, std::size_t rollouts,
                 double proposal_scale, double cn0_floor, double jam_slope,
                 const std::string& report_path, const Common& c) {
    check_seed(c);
    require_readable(model_path);
    require_writable(c.out, c.force);
    if (!report_path.empty()) require_writable(report_path, c.force);

    const NominalModel model = io::load_model(model_path);
    FalsificationConfig cfg;
    cfg.target_fpr = target;
    cfg.rollouts = rollouts;
    cfg.proposal_scale = proposal_scale;
    cfg.seed = c.seed;
    const OptimizerReport report = optimize_threshold(model, cfg);

    const RegionMap regions =
        build_regions(model, report.ellipse, RegionConfig{cn0_floor, jam_slope});
    io::save_regions(regions, io::model_hash(model), c.out);
    if (!report_path.empty()) io::save_optimizer_report(report, cfg, report_path);
    std::cerr << "optimize-threshold: p_hat " << report.achieved_fpr.p_hat << " +/- "
              << report.achieved_fpr.std_err << ", area " << report.area << " dB^2, "
              << report.iterations << " iterations\n";
    return 0;
}

int cmd_classify(const std::string& model_path, const std::string& regions_path,
                 const std::string& input, const Common& c) {
    require_readable(model_path);
    require_readable(regions_path);
    require_readable(input);
    require_writable(c.out, c.force);

    const NominalModel model = io::load_model(model_path);
    const io::RegionFile rf = io::load_regions(regions_path);
    if (rf.model_hash != io::model_hash(model))
        throw HashMismatch("region file was built from a different model (hash " +
                           rf.model_hash + " vs " + io::model_hash(model) + ")");

    const std::vector<MetricPoint> points = io::load_metric_csv(input);
    const StreamClassification sc = classify_stream(points, rf.regions);
    io::save_classified_csv(sc.points, c.out);
    for (const auto& [label, n] : sc.counts)
        std::cerr << "classify: " << label_name(label) << " " << n << "\n";
    return 0;
}

int cmd_simulate(const std::string& scenario_path, const std::string& config,
                 const std::string& truth_path, const Common& c) {
    check_seed(c);
    require_readable(scenario_path);
    require_writable(c.out, c.force);
    require_writable(truth_path, c.force);

    CalibrationConfig cfg;
    if (!config.empty()) {
        require_readable(config);
        cfg = io::load_calibration(config);
    }
    const WeightTable weights =
        cfg.weights.count("GPS_L1CA") ? cfg.weights.at("GPS_L1CA") : l1ca_weight_table();
    double frac_sum = 0.0;
    for (double f : weights.fractions) frac_sum += f;

    const ScenarioScript script = io::load_scenario(scenario_path);
    const LabeledStream stream = render(script, c.seed);

    std::ofstream out(c.out);
    if (!out) throw Unreadable("cannot write " + c.out);
    for (const auto& p : stream.points) {
        ReceiverEpoch e{p.t, p.sat, p.cn0, p.elevation_deg};
        out << to_jsonl(e) << "\n";
        // synthesize a uniform spectrum record whose calibrated aggregate
        // reproduces the rendered received power under the same config
        const double span_value =
            (p.rx_power + cfg.chain_gain_db - cfg.unit_curve.b) / cfg.unit_curve.a;
        SpectrumRecord rec;
        rec.t = p.t;
        rec.f0_hz = weights.bin_center_freqs.front();
        rec.df_hz = weights.bin_center_freqs.size() > 1
                        ? weights.bin_center_freqs[1] - weights.bin_center_freqs[0]
                        : 500e3;
        rec.bins_db.assign(weights.fractions.size(),
                           span_value - 10.0 * std::log10(frac_sum));
        rec.pga = 0.0;
        rec.temp_k = cfg.ref_temp_k;
        out << to_jsonl(rec) << "\n";
    }
    io::save_truth_csv(stream.points, stream.truth, truth_path);
    std::cerr << "simulate: " << stream.points.size() << " epochs\n";
    return 0;
}

int cmd_evaluate(const std::string& pred_path, const std::string& truth_path,
                 const std::vector<std::string>& positive,
                 const std::vector<std::string>& window_specs, const Common& c) {
    require_readable(pred_path);
    require_readable(truth_path);
    require_writable(c.out, c.force);

    const auto pred_rows = io::load_classified_csv(pred_path);
    const auto truth_rows = io::load_truth_csv(truth_path);
    if (pred_rows.size() != truth_rows.size())
        throw LengthMismatch("prediction and truth files differ in length");

    std::set<Label> positive_set;
    for (const auto& name : positive) positive_set.insert(label_from_name(name));

    std::vector<double> times;
    std::vector<Label> pred, truth;
    for (std::size_t i = 0; i < pred_rows.size(); ++i) {
        times.push_back(pred_rows[i].point.t);
        ClassifiedPoint cp;
        cp.label = pred_rows[i].label;
        cp.loss_attribution = pred_rows[i].loss_attribution;
        pred.push_back(effective_label(cp));
        truth.push_back(truth_rows[i].second);
    }

    std::vector<Window> windows;
    for (const auto& spec : window_specs) {
        // t0:t1:name
        const auto c1 = spec.find(':');
        const auto c2 = spec.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw Error("window spec must be t0:t1:name, got " + spec);
        windows.push_back(
            {std::stod(spec.substr(0, c1)), std::stod(spec.substr(c1 + 1, c2 - c1 - 1)),
             spec.substr(c2 + 1)});
    }
    if (windows.empty() && !times.empty())
        windows.push_back({times.front(), times.back() + 1.0, "full"});

    const auto slices = window_slice(times, pred, truth, windows);
    std::vector<std::pair<std::string, DetectionReport>> rows;
    for (const auto& s : slices) {
        const DetectionReport r = score_detection(s.pred, s.truth, positive_set);
        rows.emplace_back(s.name, r);
        std::cerr << "evaluate[" << s.name << "]: tp " << r.counts.tp << " fp " << r.counts.fp
                  << " fn " << r.counts.fn << " tn " << r.counts.tn;
        if (r.accuracy) std::cerr << " acc " << round_pct_1dp(*r.accuracy) << "%";
        std::cerr << "\n";
    }
    io::save_detection_report(rows, c.out);
    return 0;
}

int cmd_plotdata(const std::string& input, const Common& c) {
    require_readable(input);
    require_writable(c.out, c.force);
    const std::vector<MetricPoint> points = io::load_metric_csv(input);
    std::map<std::pair<int, int>, std::size_t> density;
    for (const auto& p : points) {
        if (!p.cn0) continue;
        const GridCell cell = cell_of(p);
        ++density[{cell.i, cell.j}];
    }
    std::ofstream out(c.out);
    if (!out) throw Unreadable("cannot write " + c.out);
    out << "rx_power_cell,cn0_cell,count\n";
    for (const auto& [cell, n] : density)
        out << cell.first << "," << cell.second << "," << n << "\n";
    std::cerr << "plot-data: " << density.size() << " occupied cells\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GNSS interference monitoring toolkit: calibrated C/N0-over-received-power "
                 "metric, nominal-region learning, threshold optimization and classification"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "JSONL observables -> metric point CSV");
    std::vector<std::string> in_inputs;
    std::string in_config;
    double in_window = 1.0;
    Common in_c;
    ingest->add_option("--input", in_inputs, "JSONL input files")->required();
    ingest->add_option("--config", in_config, "calibration config (JSON)");
    ingest->add_option("--window", in_window, "pairing window, seconds");
    add_common(ingest, in_c, false);

    // fit-nominal
    auto* fit = app.add_subcommand("fit-nominal", "fit the nominal model from metric CSVs");
    std::vector<std::string> fit_inputs, fit_sats;
    double fit_elev = 46.0, fit_width = 2.0;
    bool fit_attest = false;
    Common fit_c;
    fit->add_option("--input", fit_inputs, "metric point CSV files")->required();
    fit->add_option("--elev-center", fit_elev, "elevation bin center, degrees");
    fit->add_option("--elev-width", fit_width, "elevation bin width, degrees");
    fit->add_option("--sat", fit_sats, "satellite id filter (repeatable)");
    fit->add_flag("--attest-nominal", fit_attest,
                  "assert the inputs were collected interference-free");
    add_common(fit, fit_c, false);

    // optimize-threshold
    auto* opt = app.add_subcommand("optimize-threshold",
                                   "optimize the detection boundary to a target FPR");
    std::string opt_model, opt_report;
    double opt_target = 1e-6, opt_scale = 3.0, opt_floor = 27.0, opt_slope = -1.0;
    std::size_t opt_rollouts = 100000;
    Common opt_c;
    opt->add_option("--model", opt_model, "nominal model file")->required();
    opt->add_option("--target", opt_target, "target false-positive rate");
    opt->add_option("--rollouts", opt_rollouts, "rollouts per estimate");
    opt->add_option("--proposal-scale", opt_scale, "proposal covariance multiplier");
    opt->add_option("--cn0-floor", opt_floor, "C/N0 usability floor, dB-Hz");
    opt->add_option("--jam-slope", opt_slope, "jamming path slope");
    opt->add_option("--report", opt_report, "optimizer report output path");
    add_common(opt, opt_c, true);

    // classify
    auto* cls = app.add_subcommand("classify", "label metric points with the region map");
    std::string cls_model, cls_regions, cls_input;
    Common cls_c;
    cls->add_option("--model", cls_model, "nominal model file")->required();
    cls->add_option("--regions", cls_regions, "region file")->required();
    cls->add_option("--input", cls_input, "metric point CSV")->required();
    add_common(cls, cls_c, false);

    // simulate
    auto* sim = app.add_subcommand("simulate", "render a labeled synthetic stream");
    std::string sim_scenario, sim_truth, sim_config;
    Common sim_c;
    sim->add_option("--scenario", sim_scenario, "scenario script (JSON)")->required();
    sim->add_option("--config", sim_config, "calibration config used to synthesize spectra");
    sim->add_option("--truth", sim_truth, "ground-truth CSV output")->required();
    add_common(sim, sim_c, true);

    // evaluate
    auto* eva = app.add_subcommand("evaluate", "score classified stream against ground truth");
    std::string eva_pred, eva_truth;
    std::vector<std::string> eva_positive{"Jamming", "Spoofing"};
    std::vector<std::string> eva_windows;
    Common eva_c;
    eva->add_option("--pred", eva_pred, "classified CSV")->required();
    eva->add_option("--truth", eva_truth, "truth CSV")->required();
    eva->add_option("--positive", eva_positive, "positive label set");
    eva->add_option("--window", eva_windows, "t0:t1:name (repeatable)");
    add_common(eva, eva_c, false);

    // plot-data
    auto* plot = app.add_subcommand("plot-data", "density grid CSV for external plotting");
    std::string plot_input;
    Common plot_c;
    plot->add_option("--input", plot_input, "metric point CSV")->required();
    add_common(plot, plot_c, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) return cmd_ingest(in_inputs, in_config, in_window, in_c);
        if (*fit) return cmd_fit(fit_inputs, fit_elev, fit_width, fit_sats, fit_attest, fit_c);
        if (*opt)
            return cmd_optimize(opt_model, opt_target, opt_rollouts, opt_scale, opt_floor,
                                opt_slope, opt_report, opt_c);
        if (*cls) return cmd_classify(cls_model, cls_regions, cls_input, cls_c);
        if (*sim) return cmd_simulate(sim_scenario, sim_config, sim_truth, sim_c);
        if (*eva) return cmd_evaluate(eva_pred, eva_truth, eva_positive, eva_windows, eva_c);
        if (*plot) return cmd_plotdata(plot_input, plot_c);
    } catch (const HashMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHashMismatch;
    } catch (const Unreadable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return 0;
}
