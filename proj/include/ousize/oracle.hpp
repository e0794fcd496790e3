#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "ousize/ou_model.hpp"
#include "ousize/variance.hpp"

namespace ousize {

enum class Estimator { GLS, OLS };

/// Regression design on the even grid: intercept-only (ones), slope-only
/// (t_k), or both columns.
Eigen::MatrixXd design_matrix(ModelKind kind, const Grid& grid);

/// (X' S^-1 X)^-1 via a symmetric factorization of S; S is never inverted
/// explicitly. This generic dense solve is the oracle of record.
Eigen::MatrixXd gls_covariance(const Eigen::MatrixXd& X, const Eigen::MatrixXd& S);

/// Exact OLS covariance under correlated errors: (X'X)^-1 X'SX (X'X)^-1.
Eigen::MatrixXd ols_sandwich_covariance(const Eigen::MatrixXd& X,
                                        const Eigen::MatrixXd& S);

/// GLS covariance through the closed-form tridiagonal AR(1) precision matrix.
/// A speed path only; must agree with gls_covariance to 1e-10.
Eigen::MatrixXd gls_covariance_ar1(ModelKind kind, const Grid& grid,
                                   const OuParameters& params);

/// Sample covariance of per-path estimates over `reps` simulated OU paths
/// (beta_true = 0). Deterministic given the seed: replications are split into
/// fixed chunks with per-chunk substreams and merged in chunk order, so the
/// result is bitwise identical whatever the thread count.
Eigen::MatrixXd monte_carlo_estimator_covariance(ModelKind kind, const Grid& grid,
                                                 const OuParameters& params,
                                                 Estimator estimator, long reps,
                                                 std::uint64_t seed);

/// Single-threaded reference for the kernel above; bitwise-equal output.
Eigen::MatrixXd monte_carlo_estimator_covariance_serial(ModelKind kind,
                                                        const Grid& grid,
                                                        const OuParameters& params,
                                                        Estimator estimator, long reps,
                                                        std::uint64_t seed);

}  // namespace ousize
