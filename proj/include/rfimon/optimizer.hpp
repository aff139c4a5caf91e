#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rfimon/nominal.hpp"
#include "rfimon/regions.hpp"

namespace rfimon {

struct FalsificationConfig {
    std::size_t rollouts = 100000;   // >= 1e4
    double proposal_scale = 3.0;     // covariance multiplier of q, >= 1
    double target_fpr = 1e-6;
    std::uint64_t seed = 1;
    /// Quantize rollouts to the 1x1 grid before the failure indicator, so the
    /// estimate refers to the same discretized space the detector runs on.
    bool quantize = true;
};

struct FprEstimate {
    double p_hat = 0.0;
    double std_err = 0.0;
    std::size_t rollouts_used = 0;
};

/// Importance-sampled false-positive probability of the boundary:
/// p_hat = (1/m) sum p(tau_i)/q(tau_i) 1{tau_i outside ellipse}, tau_i ~ q.
FprEstimate estimate_fpr(const NominalModel& model, const ThresholdEllipse& ellipse,
                         const FalsificationConfig& cfg);

struct SimplexConfig {
    double reflect = 1.0;
    double expand = 2.0;
    double contract = 0.5;
    double shrink = 0.5;
    double tol = 1e-3;  // simplex diameter in normalized coordinates
    int max_iter = 500;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<std::vector<double>> simplex,
                             const SimplexConfig& cfg = {});

struct OptimizerReport {
    ThresholdEllipse ellipse;
    FprEstimate achieved_fpr;
    double area = 0.0;
    int iterations = 0;
    bool converged = false;
    std::uint64_t seed = 0;
};

/// Minimize boundary area subject to the target false-positive rate, using a
/// soft asymmetric penalty around the target.
OptimizerReport optimize_threshold(const NominalModel& model, const FalsificationConfig& cfg,
                                   const SimplexConfig& nm_cfg = {});

}  // namespace rfimon
