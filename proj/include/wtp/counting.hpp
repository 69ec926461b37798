#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wtp/instance.hpp"

namespace wtp {

inline constexpr std::uint64_t kDefaultCountCap = 1'000'000'000;

struct CountResult {
    std::uint64_t count = 0;  ///< exact count; equals cap when capped (true count > cap)
    bool capped = false;
    std::uint64_t cap = 0;
    std::uint64_t nodes_visited = 0;      ///< accepted partial indices; >= count
    std::uint64_t max_depth_reached = 0;  ///< deepest accepted coordinate
    std::chrono::nanoseconds elapsed{0};
};

/// |{ j in N^d : prod_k lambda_{k, j_k} > eps^2 }| by depth-first search with
/// log-scale prefix products.
///
/// At each coordinate, j_k = 1 contributes factor 1 and always extends; the
/// j_k >= 2 loop stops at the first value whose prefix falls to the threshold
/// or below, which is exhaustive because coordinate eigenvalues are
/// non-increasing in j_k and every deeper factor is <= 1. Prefixes never grow
/// along a path (also true in floating point), so pruning agrees exactly with
/// the full product test. Enumeration order is fixed: j_k = 1, 2, 3, ...
inline CountResult count_exact(const ProblemInstance& inst, double eps,
                               std::uint64_t cap = kDefaultCountCap) {
    const auto t0 = std::chrono::steady_clock::now();
    CountResult r;
    r.cap = cap;
    const double tau = 2.0 * std::log(eps);  // log(eps^2); count iff log-product > tau
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("count: epsilon must be finite and > 0");

    const std::uint64_t d = inst.d();
    if (tau < 0.0) {
        std::vector<double> pref(d + 1, 0.0);
        std::vector<std::uint64_t> j(d + 1, 0);
        std::uint64_t k = 1;
        j[1] = 0;
        while (k >= 1) {
            ++j[k];
            const double lp = pref[k - 1] - inst.weighted_neg_log(k, j[k]);
            if (lp > tau) {
                ++r.nodes_visited;
                r.max_depth_reached = std::max(r.max_depth_reached, k);
                if (k == d) {
                    if (r.count == cap) {
                        r.capped = true;
                        break;
                    }
                    ++r.count;
                } else {
                    pref[k] = lp;
                    ++k;
                    j[k] = 0;
                }
            } else {
                if (--k == 0) break;
            }
        }
    }
    r.elapsed = std::chrono::steady_clock::now() - t0;
    return r;
}

/// Same count by exhaustive enumeration of the full grid {1..per_coord_limit}^d,
/// testing every point's complete product. Correct whenever
/// per_coord_limit >= j_of_epsilon(lambdas, eps): any counted index has every
/// coordinate entry above eps^2, and weights only shrink entries. Refuses grids
/// beyond point_guard points.
inline CountResult count_bruteforce(const ProblemInstance& inst, double eps,
                                    std::uint64_t per_coord_limit,
                                    std::uint64_t point_guard = 100'000'000) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("count: epsilon must be finite and > 0");
    if (per_coord_limit < 1) throw std::invalid_argument("bruteforce: per_coord_limit must be >= 1");
    const std::uint64_t d = inst.d();
    const double ln_points = static_cast<double>(d) * std::log(static_cast<double>(per_coord_limit));
    if (ln_points > std::log(static_cast<double>(point_guard)) + 1e-9)
        throw std::invalid_argument("bruteforce: grid exceeds the point guard");

    const double tau = 2.0 * std::log(eps);
    CountResult r;
    std::vector<double> pref(d + 1, 0.0);
    std::vector<std::uint64_t> j(d + 1, 1);
    for (std::uint64_t k = 1; k <= d; ++k) pref[k] = pref[k - 1] - inst.weighted_neg_log(k, j[k]);
    r.count = pref[d] > tau ? 1 : 0;
    r.nodes_visited = 1;
    r.max_depth_reached = d;
    while (true) {
        std::uint64_t k = d;
        while (k >= 1 && j[k] == per_coord_limit) j[k--] = 1;
        if (k == 0) break;
        ++j[k];
        for (std::uint64_t i = k; i <= d; ++i) pref[i] = pref[i - 1] - inst.weighted_neg_log(i, j[i]);
        ++r.nodes_visited;
        if (pref[d] > tau) ++r.count;
    }
    r.elapsed = std::chrono::steady_clock::now() - t0;
    return r;
}

} // namespace wtp
