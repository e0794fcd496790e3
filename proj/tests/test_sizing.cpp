#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ousize/sizing.hpp"

using namespace ousize;

namespace {

ThresholdResult fixed_threshold(const std::string& label, double target, double x) {
    ThresholdResult t;
    t.label = label;
    t.target_ratio = target;
    t.x_at_target = x;
    t.ci_lo = x - 0.01;
    t.ci_hi = x + 0.01;
    t.fit = {};
    return t;
}

}  // namespace

TEST_CASE("snr / lambda conversions") {
    CHECK(lambda_from_snr(2.0, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(lambda_from_snr(2.0, 0.5) == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(snr_from_lambda(4.0, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    for (double lambda : {0.3, 4.0, 148.9})
        for (double sigma2 : {0.5, 1.0, 2.0})
            CHECK(lambda_from_snr(snr_from_lambda(lambda, sigma2), sigma2) ==
                  doctest::Approx(lambda).epsilon(1e-12));
    CHECK_THROWS_AS(lambda_from_snr(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(snr_from_lambda(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("approximate size from a threshold") {
    const auto t = fixed_threshold("agnostic", 0.9, 1.190);
    CHECK(approx_sample_size(4.0, t) == 4);     // 4/1.190 = 3.36 -> n > 3.36
    CHECK(approx_sample_size(16.0, t) == 14);   // 16/1.190 = 13.45
    CHECK(approx_sample_size(148.9, t) == 126); // floor(148.9/1.190) + 1
    CHECK(approx_sample_size(1.19, t) == 3);    // planning floor
    // exact tie still rounds up: 2 / 0.5 = 4 exactly, strict inequality -> 5
    CHECK(approx_sample_size(2.0, fixed_threshold("a", 0.9, 0.5)) == 5);
    // monotone in lambda, antitone in the threshold
    CHECK(approx_sample_size(20.0, t) >= approx_sample_size(16.0, t));
    CHECK(approx_sample_size(16.0, fixed_threshold("a", 0.9, 2.0)) <=
          approx_sample_size(16.0, t));
}

TEST_CASE("exact size: minimality witness and monotonicity") {
    for (const auto& spec : all_specs())
        for (double lambda : {0.5, 2.0, 10.0, 50.0}) {
            int prev = 0;
            for (double target : {0.75, 0.8, 0.9, 0.95}) {
                const int n = exact_sample_size(spec, lambda, target);
                CHECK(n >= 3);
                CHECK(variance_ratio(spec, n, lambda) >= target);
                if (n > 3) CHECK(variance_ratio(spec, n - 1, lambda) < target);
                CHECK(n >= prev);
                prev = n;
            }
        }
    // nondecreasing in lambda
    const ModelSpec spec{ModelKind::InterceptOnly, ParameterTarget::Intercept};
    CHECK(exact_sample_size(spec, 50.0, 0.9) >= exact_sample_size(spec, 10.0, 0.9));
    // degenerate lambda: ratio is ~1 already at the floor
    CHECK(exact_sample_size(spec, 1e-6, 0.9) == 3);
    CHECK_THROWS_AS(exact_sample_size(spec, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("exact size is consistent with the approximate rule") {
    // the lambda=4 worked case: expected in {4, 5}
    const ModelSpec spec{ModelKind::InterceptOnly, ParameterTarget::Intercept};
    const int exact = exact_sample_size(spec, 4.0, 0.9);
    CHECK(exact >= 4);
    CHECK(exact <= 5);
}

TEST_CASE("size(): request validation") {
    std::vector<ThresholdResult> th = {fixed_threshold("agnostic", 0.9, 1.190)};
    SizingRequest both;
    both.snr = 2.0;
    both.lambda = 4.0;
    CHECK_THROWS_AS(size(both, th), std::invalid_argument);
    SizingRequest neither;
    CHECK_THROWS_AS(size(neither, th), std::invalid_argument);
    SizingRequest bad_target;
    bad_target.snr = 2.0;
    bad_target.target_ratio = 0.5;
    CHECK_THROWS_AS(size(bad_target, th), std::invalid_argument);
}

TEST_CASE("size(): agnostic workflow with the published agnostic threshold") {
    std::vector<ThresholdResult> th = {fixed_threshold("agnostic", 0.9, 1.190)};
    SizingRequest req;
    req.snr = 2.0;
    req.sigma2 = 1.0;
    req.target_ratio = 0.9;
    const SizingResult res = size(req, th);
    CHECK(res.lambda == doctest::Approx(4.0));
    REQUIRE(res.n_approx.has_value());
    CHECK(*res.n_approx == 4);
    // conservative maximum over the five specs
    int worst = 0;
    for (const auto& spec : all_specs())
        worst = std::max(worst, exact_sample_size(spec, 4.0, 0.9));
    CHECK(res.n_exact == worst);
    for (const auto& spec : all_specs())
        CHECK(res.n_exact >= exact_sample_size(spec, 4.0, 0.9));
}

TEST_CASE("size(): the sigma2=0.5 case carries the discrepancy note") {
    std::vector<ThresholdResult> th = {fixed_threshold("agnostic", 0.9, 1.190)};
    SizingRequest req;
    req.snr = 2.0;
    req.sigma2 = 0.5;
    req.target_ratio = 0.9;
    const SizingResult res = size(req, th);
    CHECK(res.lambda == doctest::Approx(16.0));
    REQUIRE(res.n_approx.has_value());
    CHECK(*res.n_approx == 14);
    CHECK(res.notes.find("19.04") != std::string::npos);
}

TEST_CASE("size(): per-spec threshold lookup and missing-threshold fallback") {
    std::vector<ThresholdResult> th = {
        fixed_threshold("intercept-only/intercept", 0.9, 1.168)};
    SizingRequest req;
    req.lambda = 10.0;
    req.target_ratio = 0.9;
    req.spec = ModelSpec{ModelKind::InterceptOnly, ParameterTarget::Intercept};
    const SizingResult res = size(req, th);
    REQUIRE(res.n_approx.has_value());
    CHECK(*res.n_approx == 9);  // floor(10/1.168) + 1
    CHECK(res.n_exact ==
          exact_sample_size(*req.spec, 10.0, 0.9));

    SizingRequest miss = req;
    miss.spec = ModelSpec{ModelKind::SlopeOnly, ParameterTarget::Slope};
    const SizingResult res2 = size(miss, th);
    CHECK_FALSE(res2.n_approx.has_value());
    CHECK(res2.n_exact >= 3);
}

TEST_CASE("rule-of-thumb preset") {
    const auto t = rule_of_thumb_threshold(0.9);
    CHECK(t.label == "rule-of-thumb");
    CHECK(t.x_at_target == 1.0);
    CHECK(approx_sample_size(148.9, t) == 149);
}
