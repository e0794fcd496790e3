#include "ousize/threshold.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace ousize {

double CubicFit::evaluate(double x) const {
    const double d = x - center;
    return b0 + b1 * x + b2 * d * d + b3 * d * d * d;
}

namespace {

RatioDataset build_rows(const Design& design, const std::vector<ModelSpec>& specs,
                        bool parallel) {
    if (design.points.empty())
        throw std::invalid_argument("build_ratio_dataset: empty design");
    RatioDataset ds;
    ds.design_seed = design.seed;
    const std::size_t np = design.points.size();
    ds.rows.resize(np * specs.size());
#pragma omp parallel for collapse(2) schedule(static) if (parallel)
    for (std::size_t s = 0; s < specs.size(); ++s) {
        for (std::size_t i = 0; i < np; ++i) {
            const auto& pt = design.points[i];
            RatioRow& row = ds.rows[s * np + i];
            row.n = pt.n;
            row.lambda = pt.lambda;
            row.x = pt.lambda / pt.n;
            row.ratio = variance_ratio(specs[s], pt.n, pt.lambda);
            row.spec = specs[s];
        }
    }
    return ds;
}

}  // namespace

RatioDataset build_ratio_dataset(const Design& design,
                                 const std::vector<ModelSpec>& specs) {
    return build_rows(design, specs, true);
}

RatioDataset build_ratio_dataset_serial(const Design& design,
                                        const std::vector<ModelSpec>& specs) {
    return build_rows(design, specs, false);
}

RatioDataset restrict_dataset(const RatioDataset& dataset, double min_ratio) {
    RatioDataset out;
    out.design_seed = dataset.design_seed;
    out.min_ratio = min_ratio;
    for (const auto& r : dataset.rows)
        if (r.ratio >= min_ratio) out.rows.push_back(r);
    if (out.rows.empty())
        throw std::runtime_error("restrict_dataset: no rows with ratio >= threshold");
    return out;
}

CubicFit fit_cubic(const RatioDataset& dataset) {
    const auto& rows = dataset.rows;
    const int n = static_cast<int>(rows.size());
    if (n < 8) throw std::invalid_argument("fit_cubic: need at least 8 rows");

    double c = 0.0;
    for (const auto& r : rows) c += r.x;
    c /= n;

    Eigen::MatrixXd A(n, 4);
    Eigen::VectorXd y(n);
    double x_min = rows[0].x, x_max = rows[0].x;
    for (int i = 0; i < n; ++i) {
        const double x = rows[i].x;
        const double d = x - c;
        A(i, 0) = 1.0;
        A(i, 1) = x;
        A(i, 2) = d * d;
        A(i, 3) = d * d * d;
        y(i) = rows[i].ratio;
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
    }
    if (!(x_max > x_min)) throw std::runtime_error("fit_cubic: degenerate x values");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < 4) throw std::runtime_error("fit_cubic: rank-deficient regressors");
    const Eigen::VectorXd b = qr.solve(y);

    const Eigen::VectorXd resid = y - A * b;
    const double sse = resid.squaredNorm();
    const double mean_y = y.mean();
    const double sst = (y.array() - mean_y).matrix().squaredNorm();
    const double r2 = sst > 0.0 ? 1.0 - sse / sst : 1.0;

    CubicFit fit;
    fit.b0 = b(0);
    fit.b1 = b(1);
    fit.b2 = b(2);
    fit.b3 = b(3);
    fit.center = c;
    fit.n_rows = n;
    fit.r2_adj = 1.0 - (1.0 - r2) * (n - 1.0) / (n - 4.0);
    fit.rmse = std::sqrt(sse / (n - 4.0));
    fit.x_min = x_min;
    fit.x_max = x_max;
    return fit;
}

double solve_ratio_threshold(const CubicFit& fit, double target_ratio) {
    // Monotonicity gate: a cubic with spurious wiggles over the fitted range
    // is not trustworthy for root extraction. The cubic's lower tail may rise
    // very slightly near x = 0 (the published coefficients do too); a leading
    // rise below 0.01 is tolerated and the root is taken on the decreasing
    // flank past the peak.
    constexpr int kGrid = 512;
    std::array<double, kGrid + 1> ys;
    for (int i = 0; i <= kGrid; ++i)
        ys[i] = fit.evaluate(fit.x_min + (fit.x_max - fit.x_min) * i / kGrid);
    int peak = 0;
    for (int i = 1; i <= kGrid; ++i)
        if (ys[i] > ys[peak]) peak = i;
    if (ys[peak] - ys[0] > 0.01)
        throw std::runtime_error(
            "solve_ratio_threshold: fit is not monotone decreasing over its domain");
    double prev = ys[peak];
    for (int i = peak + 1; i <= kGrid; ++i) {
        if (ys[i] > prev + 1e-12)
            throw std::runtime_error(
                "solve_ratio_threshold: fit is not monotone decreasing over its domain");
        prev = ys[i];
    }
    if (target_ratio > ys[peak] || target_ratio < ys[kGrid])
        throw std::runtime_error("solve_ratio_threshold: target outside fitted range");

    double lo = fit.x_min + (fit.x_max - fit.x_min) * peak / kGrid, hi = fit.x_max;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (fit.evaluate(mid) > target_ratio)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::pair<double, double> threshold_ci(double x_at_target, double rmse) {
    if (rmse < 0.0) throw std::invalid_argument("threshold_ci: rmse must be >= 0");
    return {x_at_target - 1.96 * rmse, x_at_target + 1.96 * rmse};
}

std::vector<ThresholdResult> threshold_table(const Design& design,
                                             const std::vector<double>& targets) {
    std::vector<std::pair<std::string, RatioDataset>> fits_input;
    const auto& specs = all_specs();
    RatioDataset pooled;
    pooled.design_seed = design.seed;
    for (const auto& spec : specs) {
        auto ds = restrict_dataset(build_ratio_dataset(design, {spec}), 0.7);
        pooled.min_ratio = ds.min_ratio;
        pooled.rows.insert(pooled.rows.end(), ds.rows.begin(), ds.rows.end());
        fits_input.emplace_back(spec.label(), std::move(ds));
    }
    fits_input.emplace_back("agnostic", std::move(pooled));

    std::vector<ThresholdResult> table;
    for (const auto& [label, ds] : fits_input) {
        const CubicFit fit = fit_cubic(ds);
        for (double target : targets) {
            ThresholdResult tr;
            tr.label = label;
            tr.target_ratio = target;
            tr.x_at_target = solve_ratio_threshold(fit, target);
            std::tie(tr.ci_lo, tr.ci_hi) = threshold_ci(tr.x_at_target, fit.rmse);
            tr.fit = fit;
            table.push_back(tr);
        }
    }
    return table;
}

}  // namespace ousize
