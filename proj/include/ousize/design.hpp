#pragma once

#include <cstdint>
#include <vector>

namespace ousize {

/// Bounds of the (n, lambda) planning box.
constexpr int kDesignNMin = 3;
constexpr int kDesignNMax = 50;
constexpr double kDesignLambdaMin = 0.001;
constexpr double kDesignLambdaMax = 150.0;

struct DesignPoint {
    int n;          // in [3, 50]
    double lambda;  // in [0.001, 150], 2-decimal resolution
};

struct Design {
    std::vector<DesignPoint> points;  // deduplicated, first occurrence kept
    double min_pairwise_distance = 0.0;    // on unit-square scaled axes
    double centered_l2_discrepancy = 0.0;  // on unit-square scaled axes
    std::uint64_t seed = 0;
    int n_points_requested = 0;
    int maximin_restarts = 0;
};

/// Space-filling sample of the box. Each of `maximin_restarts` candidates is
/// a centered Latin hypercube pairing refined by phi_p swap descent; the
/// candidate with the largest minimum pairwise distance wins (ties: lowest
/// restart index). n is then rounded to an integer, lambda to 2 decimals,
/// and rounding duplicates are dropped. Deterministic given the seed.
Design latin_hypercube(int n_points, std::uint64_t seed, int maximin_restarts);

/// Same search with the restart loop forced single-threaded; identical output.
Design latin_hypercube_serial(int n_points, std::uint64_t seed, int maximin_restarts);

/// Pre-rounding unit-square points of one candidate (exposed for the
/// stratification property: one point per axis stratum).
std::vector<std::pair<double, double>> lhs_unit_points(int n_points,
                                                       std::uint64_t seed,
                                                       int restart_index);

/// Minimum Euclidean distance between distinct points after scaling each
/// axis of the box to [0,1]. Requires >= 2 points.
double min_pairwise_distance(const std::vector<DesignPoint>& points);

/// Standard centered L2 discrepancy of the box-scaled point set.
double centered_l2_discrepancy(const std::vector<DesignPoint>& points);

}  // namespace ousize
