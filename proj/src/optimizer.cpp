#include "rfimon/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "rfimon/errors.hpp"

namespace rfimon {

FprEstimate estimate_fpr(const NominalModel& model, const ThresholdEllipse& ellipse,
                         const FalsificationConfig& cfg) {
    if (cfg.proposal_scale < 1.0) throw DegenerateProposal("proposal_scale must be >= 1");
    if (!model.covariance.positive_definite())
        throw DegenerateProposal("model covariance not positive definite");

    const Sym2 qcov = model.covariance.scaled(cfg.proposal_scale * cfg.proposal_scale);
    double l00, l10, l11;
    qcov.cholesky(l00, l10, l11);

    Rng rng(cfg.seed);
    const std::size_t m = cfg.rollouts;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double z0 = rng.normal();
        const double z1 = rng.normal();
        const Vec2 tau{model.mean.x + l00 * z0, model.mean.y + l10 * z0 + l11 * z1};

        Vec2 probe = tau;
        if (cfg.quantize) probe = cell_center(cell_of(tau));
        if (ellipse.contains(probe)) continue;

        const double w = gauss2_pdf(model.mean, model.covariance, tau) /
                         gauss2_pdf(model.mean, qcov, tau);
        sum += w;
        sum_sq += w * w;
    }

    FprEstimate est;
    est.rollouts_used = m;
    est.p_hat = sum / static_cast<double>(m);
    const double var =
        std::max(0.0, sum_sq / static_cast<double>(m) - est.p_hat * est.p_hat);
    est.std_err = std::sqrt(var / static_cast<double>(m));
    return est;
}

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<std::vector<double>> simplex,
                             const SimplexConfig& cfg) {
    const std::size_t n = simplex.front().size();
    std::vector<double> values(simplex.size());
    for (std::size_t i = 0; i < simplex.size(); ++i) values[i] = f(simplex[i]);

    auto order = [&] {
        std::vector<std::size_t> idx(simplex.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> v2;
        for (std::size_t i : idx) {
            s2.push_back(simplex[i]);
            v2.push_back(values[i]);
        }
        simplex.swap(s2);
        values.swap(v2);
    };

    auto diameter = [&] {
        double d = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i)
            for (std::size_t k = 0; k < n; ++k)
                d = std::max(d, std::fabs(simplex[i][k] - simplex[0][k]));
        return d;
    };

    NelderMeadResult res;
    int iter = 0;
    for (; iter < cfg.max_iter; ++iter) {
        order();
        if (diameter() < cfg.tol) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
            for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
        for (double& c : centroid) c /= static_cast<double>(simplex.size() - 1);

        auto blend = [&](double coef) {
            std::vector<double> x(n);
            for (std::size_t k = 0; k < n; ++k)
                x[k] = centroid[k] + coef * (centroid[k] - simplex.back()[k]);
            return x;
        };

        const auto xr = blend(cfg.reflect);
        const double fr = f(xr);
        if (fr < values.front()) {
            const auto xe = blend(cfg.expand);
            const double fe = f(xe);
            if (fe < fr) {
                simplex.back() = xe;
                values.back() = fe;
            } else {
                simplex.back() = xr;
                values.back() = fr;
            }
        } else if (fr < values[values.size() - 2]) {
            simplex.back() = xr;
            values.back() = fr;
        } else {
            const bool outside = fr < values.back();
            const auto xc = blend(outside ? cfg.contract : -cfg.contract);
            const double fc = f(xc);
            if (fc < std::min(fr, values.back())) {
                simplex.back() = xc;
                values.back() = fc;
            } else {
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    for (std::size_t k = 0; k < n; ++k)
                        simplex[i][k] =
                            simplex[0][k] + cfg.shrink * (simplex[i][k] - simplex[0][k]);
                    values[i] = f(simplex[i]);
                }
            }
        }
    }
    order();
    res.x = simplex.front();
    res.value = values.front();
    res.iterations = iter;
    return res;
}

namespace {

ThresholdEllipse ellipse_from_params(std::span<const double> x) {
    ThresholdEllipse e;
    e.center = {x[0], x[1]};
    e.semi_axes = {std::exp(x[2]), std::exp(x[3])};
    double rot = x[4];
    // wrap into [-pi/2, pi/2)
    while (rot < -M_PI_2) rot += M_PI;
    while (rot >= M_PI_2) rot -= M_PI;
    e.rotation = rot;
    return e;
}

}  // namespace

OptimizerReport optimize_threshold(const NominalModel& model, const FalsificationConfig& cfg,
                                   const SimplexConfig& nm_cfg) {
    const double r0 = std::sqrt(-2.0 * std::log(cfg.target_fpr));
    double l00, l10, l11;
    model.covariance.cholesky(l00, l10, l11);
    const double sx = std::sqrt(model.covariance.xx);
    const double sy = std::sqrt(model.covariance.yy);

    // initial guess: the analytic Mahalanobis-radius-r0 ellipse of the model
    const double tr = model.covariance.xx + model.covariance.yy;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - model.covariance.det()));
    const double lam1 = tr / 2.0 + disc;
    const double lam2 = tr / 2.0 - disc;
    double rot0 = 0.0;
    if (std::fabs(model.covariance.xy) > 1e-15)
        rot0 = std::atan2(lam1 - model.covariance.xx, model.covariance.xy);

    const double area0 = M_PI * r0 * r0 * std::sqrt(lam1 * lam2);
    const double w_over = 1e6 * area0;
    const double w_under = 1e2 * area0;

    auto objective = [&](std::span<const double> x) -> double {
        const ThresholdEllipse e = ellipse_from_params(x);
        if (!e.contains(model.mean)) return 1e12;
        const FprEstimate est = estimate_fpr(model, e, cfg);
        const double over = std::max(0.0, est.p_hat - cfg.target_fpr) / cfg.target_fpr;
        const double under = std::max(0.0, cfg.target_fpr - est.p_hat) / cfg.target_fpr;
        return ellipse_area(e) + w_over * over + w_under * under;
    };

    // objective over normalized coordinates so the simplex tolerance is scale-free
    auto denormalize = [&](std::span<const double> u) {
        return std::vector<double>{model.mean.x + u[0] * sx, model.mean.y + u[1] * sy,
                                   u[2], u[3], u[4]};
    };
    auto norm_objective = [&](std::span<const double> u) { return objective(denormalize(u)); };

    std::vector<double> u0{0.0, 0.0, std::log(r0 * std::sqrt(lam1)),
                           std::log(r0 * std::sqrt(lam2)), rot0};
    std::vector<std::vector<double>> simplex{u0};
    for (std::size_t k = 0; k < u0.size(); ++k) {
        auto v = u0;
        v[k] += (k == 4) ? 0.1 : std::max(0.1, std::fabs(v[k]) * 0.1);
        simplex.push_back(v);
    }

    const NelderMeadResult nm = nelder_mead(norm_objective, std::move(simplex), nm_cfg);
    const ThresholdEllipse best = ellipse_from_params(denormalize(nm.x));

    // independent re-estimate at the returned vertex
    FalsificationConfig verify = cfg;
    verify.seed = cfg.seed + 0x5eed;
    const FprEstimate achieved = estimate_fpr(model, best, verify);
    if (achieved.p_hat > cfg.target_fpr * 1.5 + 3.0 * achieved.std_err)
        throw NoFeasiblePoint("optimizer could not reach the target false-positive rate");

    OptimizerReport report;
    report.ellipse = best;
    report.achieved_fpr = achieved;
    report.area = ellipse_area(best);
    report.iterations = nm.iterations;
    report.converged = nm.converged;
    report.seed = cfg.seed;
    return report;
}

}  // namespace rfimon
