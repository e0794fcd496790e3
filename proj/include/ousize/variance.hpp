#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace ousize {

enum class ModelKind { InterceptOnly, SlopeOnly, InterceptSlope };

enum class ParameterTarget { Intercept, Slope, InterceptSlopeCovariance };

/// Which regression model and which estimand. Admissible pairs:
/// InterceptOnly -> Intercept, SlopeOnly -> Slope, InterceptSlope -> any.
struct ModelSpec {
    ModelKind kind;
    ParameterTarget target;

    bool admissible() const;
    std::string label() const;  // e.g. "intercept-only/intercept"
};

/// The five model/parameter rows of the closed-form variance table.
const std::array<ModelSpec, 5>& all_specs();

struct VarianceReport {
    double actual;    // finite-n estimator variance (or covariance)
    double limiting;  // n -> infinity value
    double ratio;     // limiting / actual
};

/// Closed-form finite-sample GLS estimator variance (covariance for the
/// covariance target) at unit sigma2; scale by sigma2 for the general case.
double actual_variance(const ModelSpec& spec, int n, double lambda);

/// Closed-form n -> infinity limit of the same quantity.
double limiting_variance(const ModelSpec& spec, double lambda);

/// limiting_variance / actual_variance. Free of sigma2. Lies in (0,1] for
/// variance targets; positive for the covariance target (both signs negative).
double variance_ratio(const ModelSpec& spec, int n, double lambda);

VarianceReport variance_report(const ModelSpec& spec, int n, double lambda);

/// Raised when a closed-form denominator degenerates numerically.
struct NumericDegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ousize
