#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ousize/threshold.hpp"
#include "ousize/variance.hpp"

namespace ousize {

/// Practitioner request: either a signal-to-noise ratio (Cohen's d scale) or
/// lambda directly, a target variance ratio, and a model choice ("agnostic"
/// when the model form is unknown).
struct SizingRequest {
    std::optional<double> snr;
    std::optional<double> lambda;
    double sigma2 = 1.0;
    double target_ratio = 0.9;
    std::optional<ModelSpec> spec;  // nullopt = agnostic
};

struct SizingResult {
    double lambda;
    std::optional<ThresholdResult> threshold_used;
    std::optional<int> n_approx;
    int n_exact;
    std::string notes;
};

/// lambda = (snr / sigma2)^2, from snr = sqrt(lambda) * sigma2.
double lambda_from_snr(double snr, double sigma2);

/// Inverse of lambda_from_snr.
double snr_from_lambda(double lambda, double sigma2);

/// Smallest n with lambda/n strictly below the threshold:
/// n = floor(lambda/x) + 1, clamped below at 3.
int approx_sample_size(double lambda, const ThresholdResult& threshold);

/// Smallest n >= 3 with variance_ratio(spec, n, lambda) >= target_ratio, by
/// ascending scan (the ratio is nondecreasing in n). Hard cap at n = 1e6.
int exact_sample_size(const ModelSpec& spec, double lambda, double target_ratio);

/// End-to-end workflow. For the agnostic case, n_exact is the conservative
/// maximum over the five model/parameter rows. Threshold lookup wants the
/// matching (label, target) row from threshold_table output.
SizingResult size(const SizingRequest& request,
                  const std::vector<ThresholdResult>& thresholds);

/// The conclusions' extra-conservative preset: a flat lambda/n < 1 rule,
/// usable in place of a fitted threshold.
ThresholdResult rule_of_thumb_threshold(double target_ratio = 0.9);

}  // namespace ousize
