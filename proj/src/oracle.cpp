#include "ousize/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ousize/rng.hpp"

namespace ousize {

Eigen::MatrixXd design_matrix(ModelKind kind, const Grid& grid) {
    const int n = grid.n;
    switch (kind) {
        case ModelKind::InterceptOnly:
            return Eigen::MatrixXd::Ones(n, 1);
        case ModelKind::SlopeOnly: {
            Eigen::MatrixXd X(n, 1);
            for (int k = 0; k < n; ++k) X(k, 0) = grid.time(k);
            return X;
        }
        case ModelKind::InterceptSlope: {
            Eigen::MatrixXd X(n, 2);
            for (int k = 0; k < n; ++k) {
                X(k, 0) = 1.0;
                X(k, 1) = grid.time(k);
            }
            return X;
        }
    }
    throw std::logic_error("unreachable");
}

Eigen::MatrixXd gls_covariance(const Eigen::MatrixXd& X, const Eigen::MatrixXd& S) {
    Eigen::LLT<Eigen::MatrixXd> llt(S);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("gls_covariance: covariance factorization failed");
    const Eigen::MatrixXd SinvX = llt.solve(X);
    const Eigen::MatrixXd info = X.transpose() * SinvX;
    Eigen::LLT<Eigen::MatrixXd> illt(info);
    if (illt.info() != Eigen::Success)
        throw std::runtime_error("gls_covariance: singular information matrix");
    return illt.solve(Eigen::MatrixXd::Identity(X.cols(), X.cols()));
}

Eigen::MatrixXd ols_sandwich_covariance(const Eigen::MatrixXd& X,
                                        const Eigen::MatrixXd& S) {
    const Eigen::MatrixXd XtX = X.transpose() * X;
    Eigen::LLT<Eigen::MatrixXd> llt(XtX);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("ols_sandwich_covariance: rank-deficient design");
    const Eigen::MatrixXd XtXinv =
        llt.solve(Eigen::MatrixXd::Identity(X.cols(), X.cols()));
    return XtXinv * X.transpose() * S * X * XtXinv;
}

Eigen::MatrixXd gls_covariance_ar1(ModelKind kind, const Grid& grid,
                                   const OuParameters& params) {
    // Closed-form AR(1) precision: (1-rho^2) * Sigma^-1 is tridiagonal with
    // diagonal (1, 1+rho^2, ..., 1+rho^2, 1) and off-diagonal -rho.
    const int n = grid.n;
    const double p = rho(n, params.lambda);
    const double scale = 1.0 / (params.sigma2 * (1.0 - p * p));
    const Eigen::MatrixXd X = design_matrix(kind, grid);
    const int q = static_cast<int>(X.cols());
    Eigen::MatrixXd info = Eigen::MatrixXd::Zero(q, q);
    for (int i = 0; i < n; ++i) {
        const double d = (i == 0 || i == n - 1) ? 1.0 : 1.0 + p * p;
        info += d * X.row(i).transpose() * X.row(i);
        if (i + 1 < n) {
            info -= p * X.row(i).transpose() * X.row(i + 1);
            info -= p * X.row(i + 1).transpose() * X.row(i);
        }
    }
    info *= scale;
    Eigen::LLT<Eigen::MatrixXd> llt(info);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("gls_covariance_ar1: singular information matrix");
    return llt.solve(Eigen::MatrixXd::Identity(q, q));
}

namespace {

constexpr int kMcChunks = 128;

// Per-chunk accumulation of sum(beta) and sum(beta beta'). The chunk layout
// is fixed, so merging in chunk index order gives the same bits regardless
// of how chunks are distributed over threads.
struct ChunkSums {
    Eigen::VectorXd s;
    Eigen::MatrixXd ss;
};

ChunkSums run_chunk(int chunk, long lo, long hi, const Eigen::MatrixXd& A,
                    const Grid& grid, const OuParameters& params,
                    std::uint64_t seed) {
    const int n = grid.n;
    const int q = static_cast<int>(A.rows());
    const double p = rho(n, params.lambda);
    const double sd = std::sqrt(params.sigma2);
    const double innov = sd * std::sqrt(1.0 - p * p);
    NormalStream z(make_stream(seed, static_cast<std::uint64_t>(chunk)));
    ChunkSums out{Eigen::VectorXd::Zero(q), Eigen::MatrixXd::Zero(q, q)};
    Eigen::VectorXd y(n);
    for (long r = lo; r < hi; ++r) {
        y(0) = sd * z.next();
        for (int k = 1; k < n; ++k) y(k) = p * y(k - 1) + innov * z.next();
        const Eigen::VectorXd beta = A * y;
        out.s += beta;
        out.ss += beta * beta.transpose();
    }
    return out;
}

Eigen::MatrixXd mc_covariance(ModelKind kind, const Grid& grid,
                              const OuParameters& params, Estimator estimator,
                              long reps, std::uint64_t seed, bool parallel) {
    if (reps < 10000)
        throw std::invalid_argument("monte_carlo_estimator_covariance: reps must be >= 1e4");
    const Eigen::MatrixXd X = design_matrix(kind, grid);
    const int q = static_cast<int>(X.cols());

    // beta_hat = A y for both estimators; precompute the linear map once.
    Eigen::MatrixXd A;
    if (estimator == Estimator::GLS) {
        const Eigen::MatrixXd S = covariance_matrix(grid, params);
        Eigen::LLT<Eigen::MatrixXd> llt(S);
        const Eigen::MatrixXd SinvX = llt.solve(X);
        A = (X.transpose() * SinvX).llt().solve(SinvX.transpose());
    } else {
        A = (X.transpose() * X).llt().solve(X.transpose());
    }

    const long per = (reps + kMcChunks - 1) / kMcChunks;
    std::vector<ChunkSums> sums(kMcChunks);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int c = 0; c < kMcChunks; ++c) {
        const long lo = c * per;
        const long hi = std::min(reps, (c + 1) * per);
        if (lo < hi) sums[c] = run_chunk(c, lo, hi, A, grid, params, seed);
    }

    Eigen::VectorXd s = Eigen::VectorXd::Zero(q);
    Eigen::MatrixXd ss = Eigen::MatrixXd::Zero(q, q);
    for (const auto& cs : sums) {
        if (cs.s.size() == 0) continue;
        s += cs.s;
        ss += cs.ss;
    }
    const double N = static_cast<double>(reps);
    const Eigen::VectorXd mean = s / N;
    return (ss - N * mean * mean.transpose()) / (N - 1.0);
}

}  // namespace

Eigen::MatrixXd monte_carlo_estimator_covariance(ModelKind kind, const Grid& grid,
                                                 const OuParameters& params,
                                                 Estimator estimator, long reps,
                                                 std::uint64_t seed) {
    return mc_covariance(kind, grid, params, estimator, reps, seed, true);
}

Eigen::MatrixXd monte_carlo_estimator_covariance_serial(ModelKind kind,
                                                        const Grid& grid,
                                                        const OuParameters& params,
                                                        Estimator estimator, long reps,
                                                        std::uint64_t seed) {
    return mc_covariance(kind, grid, params, estimator, reps, seed, false);
}

}  // namespace ousize
