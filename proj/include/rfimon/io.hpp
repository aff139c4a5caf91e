#pragma once

#include <string>
#include <vector>

#include "rfimon/calibration.hpp"
#include "rfimon/evaluation.hpp"
#include "rfimon/nominal.hpp"
#include "rfimon/optimizer.hpp"
#include "rfimon/regions.hpp"
#include "rfimon/simulator.hpp"

namespace rfimon {
namespace io {

// Calibration config (JSON): agc_factor, ref_temp_k, temp_curve,
// unit_curve {a, b, lo, hi}, chain_gain_db, weights by signal name.
CalibrationConfig load_calibration(const std::string& path);
void save_calibration(const CalibrationConfig& cfg, const std::string& path);

// Model file: mean, covariance, grid triples, filters, site offset, metadata.
// The content hash binds derived region files to this model.
NominalModel load_model(const std::string& path);
void save_model(const NominalModel& model, const std::string& path);
std::string model_hash(const NominalModel& model);

// Region file carries the geometry plus the hash of the model it was built from.
struct RegionFile {
    RegionMap regions;
    std::string model_hash;
};
RegionFile load_regions(const std::string& path);
void save_regions(const RegionMap& regions, const std::string& model_hash,
                  const std::string& path);

void save_optimizer_report(const OptimizerReport& report, const FalsificationConfig& cfg,
                           const std::string& path);

ScenarioScript load_scenario(const std::string& path);
void save_scenario(const ScenarioScript& script, const std::string& path);

// MetricPoint CSV: t,sat,rx_power_dbw_hz,cn0_dbhz,elev_deg (empty cn0 = loss).
void save_metric_csv(const std::vector<MetricPoint>& points, const std::string& path);
std::vector<MetricPoint> load_metric_csv(const std::string& path);

// Classified CSV: t,sat,rx_power,cn0,label,margin.
void save_classified_csv(const std::vector<ClassifiedPoint>& points, const std::string& path);
struct ClassifiedRow {
    MetricPoint point;
    Label label;
    std::optional<Label> loss_attribution;
    double margin;
};
std::vector<ClassifiedRow> load_classified_csv(const std::string& path);

// Truth CSV: t,label.
void save_truth_csv(const std::vector<MetricPoint>& points, const std::vector<Label>& truth,
                    const std::string& path);
std::vector<std::pair<double, Label>> load_truth_csv(const std::string& path);

void save_detection_report(const std::vector<std::pair<std::string, DetectionReport>>& rows,
                           const std::string& path);

}  // namespace io
}  // namespace rfimon
