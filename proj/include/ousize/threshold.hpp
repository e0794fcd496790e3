#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ousize/design.hpp"
#include "ousize/variance.hpp"

namespace ousize {

struct RatioRow {
    int n;
    double lambda;
    double x;      // lambda / n
    double ratio;  // variance_ratio(spec, n, lambda)
    ModelSpec spec;
};

struct RatioDataset {
    std::vector<RatioRow> rows;
    std::uint64_t design_seed = 0;
    double min_ratio = 0.0;  // 0 when unrestricted
};

/// y = b0 + b1*x + b2*(x-c)^2 + b3*(x-c)^3 fitted by ordinary least squares;
/// c is the mean of x over the fitted rows (reported, never hard-coded).
struct CubicFit {
    double b0, b1, b2, b3;
    double center;
    double r2_adj;
    double rmse;  // sqrt(SSE / (n_rows - 4))
    double x_min, x_max;
    int n_rows;

    double evaluate(double x) const;
};

struct ThresholdResult {
    std::string label;  // a ModelSpec label or "agnostic"
    double target_ratio;
    double x_at_target;  // lambda/n below which the fit attains >= target
    double ci_lo, ci_hi;
    CubicFit fit;
};

/// One row per (design point, spec); ratios via the closed forms.
RatioDataset build_ratio_dataset(const Design& design,
                                 const std::vector<ModelSpec>& specs);

/// Single-threaded reference for build_ratio_dataset; identical output.
RatioDataset build_ratio_dataset_serial(const Design& design,
                                        const std::vector<ModelSpec>& specs);

/// Keeps rows with ratio >= min_ratio. The fitted curve is only valid on the
/// retained x-range. Throws if nothing survives.
RatioDataset restrict_dataset(const RatioDataset& dataset, double min_ratio = 0.7);

/// Requires >= 8 rows with spread in x.
CubicFit fit_cubic(const RatioDataset& dataset);

/// Unique root of fit(x) = target inside [x_min, x_max] by bisection to 1e-6.
/// The fit must be monotone decreasing past its peak and the target must lie
/// inside the fitted y-range; both are checked first. A leading rise below
/// 0.01 near x_min (the cubic's lower-tail artifact) is tolerated.
double solve_ratio_threshold(const CubicFit& fit, double target_ratio);

/// The published interval convention, x +/- 1.96*rmse, applied literally.
/// Note the unit mismatch: rmse is a residual scale on the ratio axis but is
/// added directly on the x axis; see README.
std::pair<double, double> threshold_ci(double x_at_target, double rmse);

/// Full table: the five model/parameter rows plus the pooled "agnostic" fit,
/// at each target ratio.
std::vector<ThresholdResult> threshold_table(
    const Design& design,
    const std::vector<double>& targets = {0.75, 0.80, 0.90, 0.95});

}  // namespace ousize
