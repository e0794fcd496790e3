// Serial vs OpenMP timings for the three data-parallel kernels: Monte Carlo
// estimator covariance, maximin design search, and ratio-dataset assembly.
// Also asserts that the parallel and serial paths agree bitwise.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "ousize/design.hpp"
#include "ousize/oracle.hpp"
#include "ousize/threshold.hpp"

using namespace ousize;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& f) {
    const auto t0 = clock_type::now();
    f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", omp_get_max_threads());

    {
        Grid grid(40);
        OuParameters params(5.0);
        const long reps = 400000;
        Eigen::MatrixXd a, b;
        const double ts = time_ms([&] {
            a = monte_carlo_estimator_covariance_serial(ModelKind::InterceptSlope, grid,
                                                        params, Estimator::GLS, reps, 7);
        });
        const double tp = time_ms([&] {
            b = monte_carlo_estimator_covariance(ModelKind::InterceptSlope, grid, params,
                                                 Estimator::GLS, reps, 7);
        });
        if (a != b) {
            std::fprintf(stderr, "monte carlo serial/parallel mismatch\n");
            return 1;
        }
        report("monte_carlo_covariance", ts, tp);
    }

    {
        Design a, b;
        const double ts = time_ms([&] { a = latin_hypercube_serial(200, 42, 200); });
        const double tp = time_ms([&] { b = latin_hypercube(200, 42, 200); });
        if (a.points.size() != b.points.size() ||
            a.min_pairwise_distance != b.min_pairwise_distance) {
            std::fprintf(stderr, "design serial/parallel mismatch\n");
            return 1;
        }
        for (std::size_t i = 0; i < a.points.size(); ++i)
            if (a.points[i].n != b.points[i].n ||
                a.points[i].lambda != b.points[i].lambda) {
                std::fprintf(stderr, "design serial/parallel mismatch\n");
                return 1;
            }
        report("latin_hypercube", ts, tp);

        std::vector<ModelSpec> specs(all_specs().begin(), all_specs().end());
        RatioDataset ds, dp;
        const double rs = time_ms([&] {
            for (int rep = 0; rep < 200; ++rep) ds = build_ratio_dataset_serial(a, specs);
        });
        const double rp = time_ms([&] {
            for (int rep = 0; rep < 200; ++rep) dp = build_ratio_dataset(a, specs);
        });
        for (std::size_t i = 0; i < ds.rows.size(); ++i)
            if (ds.rows[i].ratio != dp.rows[i].ratio) {
                std::fprintf(stderr, "dataset serial/parallel mismatch\n");
                return 1;
            }
        report("build_ratio_dataset x200", rs, rp);
    }

    return 0;
}
