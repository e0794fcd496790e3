#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ousize/oracle.hpp"
#include "ousize/variance.hpp"

using namespace ousize;

namespace {

// Entry of the 1x1 or 2x2 estimator covariance addressed by a spec.
std::pair<int, int> entry(const ModelSpec& spec) {
    if (spec.kind != ModelKind::InterceptSlope) return {0, 0};
    switch (spec.target) {
        case ParameterTarget::Intercept: return {0, 0};
        case ParameterTarget::Slope: return {1, 1};
        default: return {0, 1};
    }
}

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("design matrices") {
    Grid g(4);
    const auto Xi = design_matrix(ModelKind::InterceptOnly, g);
    CHECK(Xi.cols() == 1);
    CHECK(Xi.minCoeff() == 1.0);
    const auto Xs = design_matrix(ModelKind::SlopeOnly, g);
    CHECK(Xs(0, 0) == 0.0);
    CHECK(Xs(3, 0) == 1.0);
    const auto Xf = design_matrix(ModelKind::InterceptSlope, g);
    CHECK(Xf.cols() == 2);
    CHECK(Xf.col(0) == Xi.col(0));
    CHECK(Xf.col(1) == Xs.col(0));
}

TEST_CASE("closed forms coincide with the GLS matrix oracle") {
    // This sweep decides the estimator question: every tabulated form is the
    // GLS variance, not the OLS sandwich.
    for (const auto& spec : all_specs()) {
        const auto [i, j] = entry(spec);
        for (int n : {3, 4, 7, 15, 30, 50})
            for (double lambda : {0.01, 0.5, 2.0, 20.0, 150.0}) {
                Grid g(n);
                const auto X = design_matrix(spec.kind, g);
                const auto S = covariance_matrix(g, OuParameters(lambda));
                const double gls = gls_covariance(X, S)(i, j);
                const double cf = actual_variance(spec, n, lambda);
                CHECK(rel_err(cf, gls) < 1e-8);
            }
    }
}

TEST_CASE("closed forms do not coincide with the OLS sandwich") {
    const ModelSpec spec{ModelKind::InterceptSlope, ParameterTarget::Slope};
    Grid g(10);
    const auto X = design_matrix(spec.kind, g);
    const auto S = covariance_matrix(g, OuParameters(2.0));
    const double ols = ols_sandwich_covariance(X, S)(1, 1);
    CHECK(rel_err(actual_variance(spec, 10, 2.0), ols) > 1e-3);
}

TEST_CASE("GLS is never beaten by OLS on the diagonal") {
    for (auto kind :
         {ModelKind::InterceptOnly, ModelKind::SlopeOnly, ModelKind::InterceptSlope})
        for (int n : {3, 10, 35})
            for (double lambda : {0.1, 1.0, 10.0, 100.0}) {
                Grid g(n);
                const auto X = design_matrix(kind, g);
                const auto S = covariance_matrix(g, OuParameters(lambda));
                const auto G = gls_covariance(X, S);
                const auto O = ols_sandwich_covariance(X, S);
                for (int d = 0; d < G.rows(); ++d)
                    CHECK(G(d, d) <= O(d, d) * (1.0 + 1e-10));
            }
}

TEST_CASE("tridiagonal AR(1) shortcut matches the dense solve") {
    for (auto kind :
         {ModelKind::InterceptOnly, ModelKind::SlopeOnly, ModelKind::InterceptSlope})
        for (int n : {3, 12, 50})
            for (double lambda : {0.05, 1.0, 30.0})
                for (double sigma2 : {1.0, 0.5}) {
                    Grid g(n);
                    OuParameters params(lambda, sigma2);
                    const auto X = design_matrix(kind, g);
                    const auto S = covariance_matrix(g, params);
                    const auto dense = gls_covariance(X, S);
                    const auto fast = gls_covariance_ar1(kind, g, params);
                    CHECK((dense - fast).cwiseAbs().maxCoeff() <
                          1e-10 * dense.cwiseAbs().maxCoeff());
                }
}

TEST_CASE("near-independent errors reduce both estimators to sigma2 (X'X)^-1") {
    Grid g(9);
    OuParameters params(1e8, 2.5);
    const auto X = design_matrix(ModelKind::InterceptSlope, g);
    const auto S = covariance_matrix(g, params);
    const Eigen::MatrixXd iid =
        2.5 * (X.transpose() * X).inverse();
    CHECK((gls_covariance(X, S) - iid).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((ols_sandwich_covariance(X, S) - iid).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("monte carlo covariance: determinism and serial/parallel identity") {
    Grid g(8);
    OuParameters params(3.0);
    const auto a = monte_carlo_estimator_covariance(ModelKind::InterceptSlope, g, params,
                                                    Estimator::GLS, 20000, 11);
    const auto b = monte_carlo_estimator_covariance(ModelKind::InterceptSlope, g, params,
                                                    Estimator::GLS, 20000, 11);
    const auto c = monte_carlo_estimator_covariance_serial(
        ModelKind::InterceptSlope, g, params, Estimator::GLS, 20000, 11);
    CHECK(a == b);
    CHECK(a == c);
    const auto d = monte_carlo_estimator_covariance(ModelKind::InterceptSlope, g, params,
                                                    Estimator::GLS, 20000, 12);
    CHECK(a != d);
    CHECK_THROWS_AS(monte_carlo_estimator_covariance(ModelKind::InterceptOnly, g, params,
                                                     Estimator::GLS, 9999, 1),
                    std::invalid_argument);
}

TEST_CASE("monte carlo covariance concords with the matrix oracles") {
    Grid g(6);
    OuParameters params(2.0);
    const long reps = 200000;
    for (auto kind :
         {ModelKind::InterceptOnly, ModelKind::SlopeOnly, ModelKind::InterceptSlope}) {
        const auto X = design_matrix(kind, g);
        const auto S = covariance_matrix(g, params);
        const auto mc_gls = monte_carlo_estimator_covariance(kind, g, params,
                                                             Estimator::GLS, reps, 5);
        const auto ex_gls = gls_covariance(X, S);
        CHECK(((mc_gls - ex_gls).cwiseAbs().array() /
               ex_gls.cwiseAbs().array().max(1e-12))
                  .maxCoeff() < 0.05);
        const auto mc_ols = monte_carlo_estimator_covariance(kind, g, params,
                                                             Estimator::OLS, reps, 5);
        const auto ex_ols = ols_sandwich_covariance(X, S);
        CHECK(((mc_ols - ex_ols).cwiseAbs().array() /
               ex_ols.cwiseAbs().array().max(1e-12))
                  .maxCoeff() < 0.05);
    }
}
