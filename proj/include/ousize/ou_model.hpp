#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace ousize {

/// Ornstein-Uhlenbeck error process on the scaled interval [0,1]:
/// zero mean, Cov(e_s, e_t) = sigma2 * exp(-lambda*|s-t|).
///
/// Callers observing on [0,T] must pre-scale: lambda_scaled = lambda_raw * T.
struct OuParameters {
    double lambda;        // mean-reversion tuning parameter, > 0
    double sigma2 = 1.0;  // overall variance, > 0

    OuParameters(double lambda_, double sigma2_ = 1.0);
};

/// n evenly spaced observation times t_k = (k-1)/(n-1) on [0,1], n >= 3.
struct Grid {
    int n;

    explicit Grid(int n_);
    double time(int k) const { return static_cast<double>(k) / (n - 1); }  // k = 0..n-1
};

/// Lag-one correlation of the induced AR(1) sequence: rho = exp(-lambda/(n-1)).
/// Accepts n >= 2 (planning operations elsewhere require n >= 3).
double rho(int n, double lambda);

/// Dense n x n covariance: entry (i,j) = sigma2 * rho^|i-j|.
Eigen::MatrixXd covariance_matrix(const Grid& grid, const OuParameters& params);

/// One sample path via the stationary AR(1) recursion,
/// e_1 ~ N(0, sigma2), e_k = rho*e_{k-1} + sqrt(sigma2*(1-rho^2))*z_k.
/// Deterministic given the seed.
std::vector<double> simulate_path(const Grid& grid, const OuParameters& params,
                                  std::uint64_t seed);

}  // namespace ousize
