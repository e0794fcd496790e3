#include "ousize/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "ousize/rng.hpp"

namespace ousize {

namespace {

constexpr double kPhiP = 30.0;  // phi_p exponent; large p approximates maximin

double dist2(const std::pair<double, double>& a, const std::pair<double, double>& b) {
    const double dx = a.first - b.first;
    const double dy = a.second - b.second;
    return dx * dx + dy * dy;
}

// (d^2)^(-p/2) with p = 30, via integer powers; the pow() call would
// dominate the search otherwise.
double phi_term(double d2) {
    const double d4 = d2 * d2;
    const double d8 = d4 * d4;
    return 1.0 / (d8 * d4 * d2 * d2 * d2);  // exponents 8+4+1+1+1 = 15
}

// Swap descent on the y-pairing, minimizing sum of d^-p. Each point in turn
// tries a random subset of swap partners and takes the best improving swap.
void refine(std::vector<std::pair<double, double>>& pts, std::mt19937_64& g) {
    const int n = static_cast<int>(pts.size());
    const int partners = std::min(32, n - 1);
    const int max_sweeps = 8;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool improved = false;
        for (int a = 0; a < n; ++a) {
            int best_b = -1;
            double best_gain = 0.0;
            for (int t = 0; t < partners; ++t) {
                const int b = static_cast<int>(g() % static_cast<std::uint64_t>(n));
                if (b == a) continue;
                // contribution change from swapping y_a and y_b
                double old_sum = 0.0, new_sum = 0.0;
                const double ya = pts[a].second, yb = pts[b].second;
                for (int k = 0; k < n; ++k) {
                    if (k == a || k == b) continue;
                    old_sum += phi_term(dist2(pts[k], pts[a]));
                    old_sum += phi_term(dist2(pts[k], pts[b]));
                    new_sum += phi_term(dist2(pts[k], {pts[a].first, yb}));
                    new_sum += phi_term(dist2(pts[k], {pts[b].first, ya}));
                }
                const double gain = old_sum - new_sum;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_b = b;
                }
            }
            if (best_b >= 0) {
                std::swap(pts[a].second, pts[best_b].second);
                improved = true;
            }
        }
        if (!improved) break;
    }
}

double min_dist_unit(const std::vector<std::pair<double, double>>& pts) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::min(best, dist2(pts[i], pts[j]));
    return std::sqrt(best);
}

std::pair<double, double> scale_to_unit(const DesignPoint& p) {
    return {(p.n - kDesignNMin) / double(kDesignNMax - kDesignNMin),
            (p.lambda - kDesignLambdaMin) / (kDesignLambdaMax - kDesignLambdaMin)};
}

Design build(int n_points, std::uint64_t seed, int restarts, bool parallel) {
    if (n_points < 10) throw std::invalid_argument("latin_hypercube: n_points must be >= 10");
    if (restarts < 1) throw std::invalid_argument("latin_hypercube: restarts must be >= 1");

    std::vector<double> min_dists(restarts);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int r = 0; r < restarts; ++r)
        min_dists[r] = min_dist_unit(lhs_unit_points(n_points, seed, r));

    int best_r = 0;
    for (int r = 1; r < restarts; ++r)
        if (min_dists[r] > min_dists[best_r]) best_r = r;  // ties keep lowest index

    const auto unit = lhs_unit_points(n_points, seed, best_r);

    Design d;
    d.seed = seed;
    d.n_points_requested = n_points;
    d.maximin_restarts = restarts;
    d.points.reserve(unit.size());
    std::vector<std::pair<int, long>> seen;
    for (const auto& [u, v] : unit) {
        const int n = kDesignNMin + static_cast<int>(std::lround(u * (kDesignNMax - kDesignNMin)));
        double lam = kDesignLambdaMin + v * (kDesignLambdaMax - kDesignLambdaMin);
        lam = std::round(lam * 100.0) / 100.0;
        if (lam < 0.01) lam = 0.01;  // keep the 2-decimal value inside the box
        if (lam > kDesignLambdaMax) lam = kDesignLambdaMax;
        const std::pair<int, long> key{n, std::lround(lam * 100.0)};
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        d.points.push_back({n, lam});
    }
    d.min_pairwise_distance = min_pairwise_distance(d.points);
    d.centered_l2_discrepancy = centered_l2_discrepancy(d.points);
    return d;
}

}  // namespace

std::vector<std::pair<double, double>> lhs_unit_points(int n_points,
                                                       std::uint64_t seed,
                                                       int restart_index) {
    auto g = make_stream(seed, static_cast<std::uint64_t>(restart_index) + 1);
    std::vector<int> perm(n_points);
    for (int i = 0; i < n_points; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), g);
    std::vector<std::pair<double, double>> pts(n_points);
    for (int i = 0; i < n_points; ++i)
        pts[i] = {(i + 0.5) / n_points, (perm[i] + 0.5) / n_points};
    refine(pts, g);
    return pts;
}

Design latin_hypercube(int n_points, std::uint64_t seed, int maximin_restarts) {
    return build(n_points, seed, maximin_restarts, true);
}

Design latin_hypercube_serial(int n_points, std::uint64_t seed, int maximin_restarts) {
    return build(n_points, seed, maximin_restarts, false);
}

double min_pairwise_distance(const std::vector<DesignPoint>& points) {
    if (points.size() < 2)
        throw std::invalid_argument("min_pairwise_distance: need at least 2 points");
    std::vector<std::pair<double, double>> unit(points.size());
    std::transform(points.begin(), points.end(), unit.begin(), scale_to_unit);
    return min_dist_unit(unit);
}

double centered_l2_discrepancy(const std::vector<DesignPoint>& points) {
    if (points.empty())
        throw std::invalid_argument("centered_l2_discrepancy: need at least 1 point");
    const std::size_t N = points.size();
    std::vector<std::pair<double, double>> u(N);
    std::transform(points.begin(), points.end(), u.begin(), scale_to_unit);

    double sum1 = 0.0;
    for (const auto& [x, y] : u) {
        const double ax = std::abs(x - 0.5), ay = std::abs(y - 0.5);
        sum1 += (1.0 + 0.5 * ax - 0.5 * ax * ax) * (1.0 + 0.5 * ay - 0.5 * ay * ay);
    }
    double sum2 = 0.0;
    for (const auto& [xi, yi] : u) {
        const double axi = std::abs(xi - 0.5), ayi = std::abs(yi - 0.5);
        for (const auto& [xj, yj] : u) {
            const double axj = std::abs(xj - 0.5), ayj = std::abs(yj - 0.5);
            sum2 += (1.0 + 0.5 * axi + 0.5 * axj - 0.5 * std::abs(xi - xj)) *
                    (1.0 + 0.5 * ayi + 0.5 * ayj - 0.5 * std::abs(yi - yj));
        }
    }
    const double Nd = static_cast<double>(N);
    const double cd2 = (13.0 / 12.0) * (13.0 / 12.0) - (2.0 / Nd) * sum1 +
                       (1.0 / (Nd * Nd)) * sum2;
    return std::sqrt(std::max(0.0, cd2));
}

}  // namespace ousize
