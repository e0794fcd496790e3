#include "ousize/variance.hpp"

#include <cmath>

#include "ousize/ou_model.hpp"

namespace ousize {

bool ModelSpec::admissible() const {
    switch (kind) {
        case ModelKind::InterceptOnly: return target == ParameterTarget::Intercept;
        case ModelKind::SlopeOnly: return target == ParameterTarget::Slope;
        case ModelKind::InterceptSlope: return true;
    }
    return false;
}

std::string ModelSpec::label() const {
    switch (kind) {
        case ModelKind::InterceptOnly: return "intercept-only/intercept";
        case ModelKind::SlopeOnly: return "slope-only/slope";
        case ModelKind::InterceptSlope:
            switch (target) {
                case ParameterTarget::Intercept: return "full/intercept";
                case ParameterTarget::Slope: return "full/slope";
                case ParameterTarget::InterceptSlopeCovariance: return "full/covariance";
            }
    }
    return "?";
}

const std::array<ModelSpec, 5>& all_specs() {
    static const std::array<ModelSpec, 5> specs = {{
        {ModelKind::InterceptOnly, ParameterTarget::Intercept},
        {ModelKind::SlopeOnly, ParameterTarget::Slope},
        {ModelKind::InterceptSlope, ParameterTarget::Intercept},
        {ModelKind::InterceptSlope, ParameterTarget::Slope},
        {ModelKind::InterceptSlope, ParameterTarget::InterceptSlopeCovariance},
    }};
    return specs;
}

namespace {

void check(const ModelSpec& spec, int n, double lambda) {
    if (!spec.admissible())
        throw std::invalid_argument("inadmissible model/target pairing: " + spec.label());
    if (n < 3) throw std::invalid_argument("variance: n must be >= 3");
    if (!(lambda > 0.0)) throw std::invalid_argument("variance: lambda must be > 0");
}

double checked(double num, double den, const char* what) {
    if (!(den > 0.0) || !std::isfinite(den))
        throw NumericDegeneracyError(std::string(what) + ": degenerate denominator");
    const double v = num / den;
    if (!std::isfinite(v))
        throw NumericDegeneracyError(std::string(what) + ": non-finite value");
    return v;
}

}  // namespace

// The closed forms below are transcribed as published; the matrix-oracle
// equivalence tests are the arbiter of transcription fidelity.  At extreme
// lambda rho underflows to 0 and every form reduces to its iid special case,
// so no separate branch is needed.
double actual_variance(const ModelSpec& spec, int n, double lambda) {
    check(spec, n, lambda);
    const double p = rho(n, lambda);
    const double nn = static_cast<double>(n);
    switch (spec.kind) {
        case ModelKind::InterceptOnly:
            return checked(1.0 + p, nn * (1.0 - p) + 2.0 * p, "intercept-only variance");
        case ModelKind::SlopeOnly:
            return checked(6.0 * (1.0 - p * p) * (nn - 1.0),
                           2.0 * nn * nn * (1.0 - 2.0 * p + p * p) + nn * (8.0 * p - 1.0) +
                               p * p * (6.0 - 7.0 * nn),
                           "slope-only variance");
        case ModelKind::InterceptSlope: {
            const double shared = nn * nn * (1.0 + p * p - 2.0 * p) +
                                  nn * (1.0 + 4.0 * p - 5.0 * p * p) +
                                  6.0 * p * (1.0 + p);
            switch (spec.target) {
                case ParameterTarget::Intercept:
                    return checked(
                        2.0 * (1.0 + p) *
                            (2.0 * nn * nn * (1.0 - 2.0 * p + p * p) +
                             nn * (8.0 * p - 1.0 - 7.0 * p * p) + 6.0 * p * p),
                        (nn * (1.0 - p) + 2.0 * p) *
                            (nn * nn * (1.0 - 2.0 * p + p * p) +
                             nn * (4.0 * p + 1.0 - 5.0 * p * p) + 6.0 * p * (1.0 + p)),
                        "full-model intercept variance");
                case ParameterTarget::Slope:
                    return checked(12.0 * (1.0 - p * p) * (nn - 1.0), shared,
                                   "full-model slope variance");
                case ParameterTarget::InterceptSlopeCovariance:
                    return -checked(6.0 * (1.0 - p * p) * (nn - 1.0), shared,
                                    "full-model covariance");
            }
        }
    }
    throw std::logic_error("unreachable");
}

double limiting_variance(const ModelSpec& spec, double lambda) {
    if (!spec.admissible())
        throw std::invalid_argument("inadmissible model/target pairing: " + spec.label());
    if (!(lambda > 0.0)) throw std::invalid_argument("variance: lambda must be > 0");
    const double L = lambda;
    switch (spec.kind) {
        case ModelKind::InterceptOnly:
            return 2.0 / (2.0 + L);
        case ModelKind::SlopeOnly:
            return 2.0 / (1.0 / L + 1.0 + L / 3.0);
        case ModelKind::InterceptSlope:
            switch (spec.target) {
                case ParameterTarget::Intercept:
                    return 8.0 * (L * L + 3.0 * L + 3.0) /
                           ((L + 2.0) * (L * L + 6.0 * L + 12.0));
                case ParameterTarget::Slope:
                    return 4.0 / (2.0 / L + 1.0 + L / 6.0);
                case ParameterTarget::InterceptSlopeCovariance:
                    return -2.0 / (L / 6.0 + 1.0 + 2.0 / L);
            }
    }
    throw std::logic_error("unreachable");
}

double variance_ratio(const ModelSpec& spec, int n, double lambda) {
    return limiting_variance(spec, lambda) / actual_variance(spec, n, lambda);
}

VarianceReport variance_report(const ModelSpec& spec, int n, double lambda) {
    VarianceReport r;
    r.actual = actual_variance(spec, n, lambda);
    r.limiting = limiting_variance(spec, lambda);
    r.ratio = r.limiting / r.actual;
    return r;
}

}  // namespace ousize
