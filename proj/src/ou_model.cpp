#include "ousize/ou_model.hpp"

#include <cmath>
#include <stdexcept>

#include "ousize/rng.hpp"

namespace ousize {

OuParameters::OuParameters(double lambda_, double sigma2_)
    : lambda(lambda_), sigma2(sigma2_) {
    if (!(lambda > 0.0)) throw std::invalid_argument("OuParameters: lambda must be > 0");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("OuParameters: sigma2 must be > 0");
}

Grid::Grid(int n_) : n(n_) {
    if (n < 3) throw std::invalid_argument("Grid: n must be >= 3");
}

double rho(int n, double lambda) {
    if (n < 2) throw std::invalid_argument("rho: n must be >= 2");
    if (!(lambda > 0.0)) throw std::invalid_argument("rho: lambda must be > 0");
    return std::exp(-lambda / (n - 1));
}

Eigen::MatrixXd covariance_matrix(const Grid& grid, const OuParameters& params) {
    const int n = grid.n;
    const double r = rho(n, params.lambda);
    Eigen::MatrixXd S(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = params.sigma2 * std::pow(r, i - j);
            S(i, j) = v;
            S(j, i) = v;
        }
    return S;
}

std::vector<double> simulate_path(const Grid& grid, const OuParameters& params,
                                  std::uint64_t seed) {
    const int n = grid.n;
    const double r = rho(n, params.lambda);
    const double sd = std::sqrt(params.sigma2);
    const double innov = sd * std::sqrt(1.0 - r * r);
    NormalStream z(make_stream(seed, 0));
    std::vector<double> path(n);
    path[0] = sd * z.next();
    for (int k = 1; k < n; ++k) path[k] = r * path[k - 1] + innov * z.next();
    return path;
}

}  // namespace ousize
