#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "wtp/counting.hpp"
#include "wtp/envelope.hpp"
#include "wtp/instance.hpp"
#include "wtp/partition.hpp"

namespace wtp {

namespace detail {

inline double log_sum_exp(const std::vector<double>& xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::max(m, x);
    if (std::isinf(m)) return m;  // all -inf, or a +inf term dominates
    double acc = 0.0;
    for (double x : xs)
        if (!std::isinf(x) || x > 0.0) acc += std::exp(x - m);
    return m + std::log(acc);
}

/// ceil(T/D) - 1 for T, D > 0 with controlled rounding: an exactly integral
/// double quotient is taken as a true tie (the boundary multiple is excluded,
/// matching strict threshold comparisons), any other quotient is nudged up a
/// few ulps before the ceiling so that rounding error cannot shrink the
/// result below its true value.
inline std::uint64_t ceil_quotient_minus_one(double T, double D) {
    if (std::isinf(D)) return 0;
    double q = T / D;
    if (q <= 1.0) return 0;
    if (q != std::floor(q)) {
        const double inf = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 4; ++i) q = std::nextafter(q, inf);
        return static_cast<std::uint64_t>(std::ceil(q)) - 1;
    }
    return static_cast<std::uint64_t>(q) - 1;
}

} // namespace detail

/// ln of the binomial coefficient C(m, s) two ways: exactly via log-gamma, and
/// the closed overestimate s * ln(e m / s). exact <= bound always.
struct LnBinomial {
    double exact;
    double bound;
};

inline LnBinomial ln_binomial_bound(std::uint64_t m, std::uint64_t s) {
    if (s > m) throw std::invalid_argument("ln_binomial_bound: s must be <= m");
    const double dm = static_cast<double>(m), ds = static_cast<double>(s);
    LnBinomial r;
    r.exact = std::lgamma(dm + 1.0) - std::lgamma(ds + 1.0) - std::lgamma(dm - ds + 1.0);
    r.bound = s == 0 ? 0.0 : ds * (1.0 + std::log(dm) - std::log(ds));
    return r;
}

/// Budget a_i: an upper bound on how many coordinates of a block can sit above
/// index 1 in a counted tuple. min(block size, ceil(T/D) - 1) with
/// T = ln eps^-2 and D = ln(1/(gamma_leader * lambda_2)). Degenerate when
/// gamma_leader * lambda_2 = 1 (D = 0): no finite budget exists.
inline std::uint64_t block_budget(const ProblemInstance& inst, const CoordinateBlock& block,
                                  double eps) {
    const double T = squared_threshold_log(eps);
    if (!(T > 0.0)) throw std::invalid_argument("block_budget: epsilon must be < 1");
    const double D = inst.gammas().neg_log(block.leader()) + inst.lambdas().neg_log(2);
    if (D <= 0.0)
        throw std::invalid_argument(
            "block_budget: gamma_leader * lambda_2 = 1, budget denominator is degenerate");
    return std::min<std::uint64_t>(block.size(), detail::ceil_quotient_minus_one(T, D));
}

/// ln of the block count bound  C(block size, a) * jthr^a  where jthr is the
/// threshold index of the eigenvalues at eps / sqrt(gamma_leader). Floored at 0:
/// the all-ones block tuple always qualifies.
inline double block_bound_budgeted_power(const ProblemInstance& inst,
                                         const CoordinateBlock& block, double eps) {
    const std::uint64_t a = block_budget(inst, block, eps);
    if (a == 0) return 0.0;
    const double T = squared_threshold_log(eps);
    const double shifted = T - inst.gammas().neg_log(block.leader());
    const double ln_jthr = inst.lambdas().ln_threshold_index(shifted);
    const double raw = ln_binomial_bound(block.size(), a).exact +
                       static_cast<double>(a) * ln_jthr;
    return std::max(raw, 0.0);
}

/// ln of the refined block count bound
///   1 + sum_{m=1}^{a} (size! / (size-m)!) * prod_{k=1}^{m} jthr(m, k)
/// where jthr(m, k) is the eigenvalue threshold index at
/// (eps / sqrt(gamma_leader^m * lambda_2^(m-k)))^(1/k). A threshold argument
/// of 1 or above makes the whole m-th term vanish. Accumulated by
/// log-sum-exp; never below 0.
inline double block_bound_term_sum(const ProblemInstance& inst, const CoordinateBlock& block,
                                   double eps) {
    const std::uint64_t a = block_budget(inst, block, eps);
    if (a == 0) return 0.0;
    const double T = squared_threshold_log(eps);
    const double Lg = inst.gammas().neg_log(block.leader());
    const double L2 = inst.lambdas().neg_log(2);
    const double n = static_cast<double>(block.size());
    std::vector<double> terms{0.0};  // the leading 1
    for (std::uint64_t m = 1; m <= a; ++m) {
        double t = std::lgamma(n + 1.0) - std::lgamma(n - static_cast<double>(m) + 1.0);
        for (std::uint64_t k = 1; k <= m; ++k) {
            const double lambda_excess = (m == k) ? 0.0 : static_cast<double>(m - k) * L2;
            const double Tk = (T - static_cast<double>(m) * Lg - lambda_excess) /
                              static_cast<double>(k);
            t += inst.lambdas().ln_threshold_index(Tk);  // -inf zeroes the term
            if (std::isinf(t) && t < 0.0) break;
        }
        terms.push_back(t);
    }
    return detail::log_sum_exp(terms);
}

struct BlockBoundRow {
    std::size_t block_index;
    std::uint64_t lo, hi;
    std::uint64_t budget;
    double ln_power_bound;
    double ln_sum_bound;
};

/// ln of the product over dyadic blocks of the budgeted-power block bounds.
/// Needs d >= 8 (partition precondition) and finite budgets on every block.
inline double ln_product_block_bound(const ProblemInstance& inst, double eps) {
    const DyadicPartition part(inst.d());
    double total = 0.0;
    for (const auto& b : part.blocks()) total += block_bound_budgeted_power(inst, b, eps);
    return total;
}

struct PowerBoundInfo {
    double ln_j_eps;        ///< ln of the eigenvalue threshold index (extended real)
    DimCount d_eps;         ///< weight threshold dimension
    std::uint64_t min_dim;  ///< min(d, d_eps) with an unbounded d_eps clamped to d
    double ln_bound;        ///< min_dim * ln_j_eps
};

/// ln of the saturated power bound  j(eps)^min(d, d(eps)): past d(eps) extra
/// coordinates are forced to index 1 and stop contributing.
inline PowerBoundInfo saturated_power_bound(const ProblemInstance& inst, double eps) {
    const double T = squared_threshold_log(eps);
    PowerBoundInfo info;
    info.ln_j_eps = inst.lambdas().ln_threshold_index(T);
    info.d_eps = d_of_epsilon(inst.gammas(), eps);
    info.min_dim = info.d_eps.infinite ? inst.d()
                                       : std::min<std::uint64_t>(inst.d(), info.d_eps.value);
    if (info.min_dim == 0)
        info.ln_bound = 0.0;  // empty exponent: the bound is j(eps)^0 = 1
    else if (std::isinf(info.ln_j_eps))
        info.ln_bound = info.ln_j_eps;
    else
        info.ln_bound = static_cast<double>(info.min_dim) * info.ln_j_eps;
    return info;
}

/// Saturated power bound restricted to its two-sided hypothesis: decaying
/// weights so d(eps) is finite. The count at eps is at most
/// j(eps)^min(d, d(eps)), which in turn is at most the count at eps^(2 d(eps)).
inline PowerBoundInfo power_bound_checked(const ProblemInstance& inst, double eps) {
    if (!inst.gammas().limit_zero())
        throw std::invalid_argument(
            "saturated power bound: weights must decay to zero (d(eps) finite)");
    PowerBoundInfo info = saturated_power_bound(inst, eps);
    if (info.d_eps.infinite)
        throw std::invalid_argument("saturated power bound: d(eps) is unbounded");
    return info;
}

struct BoundReport {
    PowerBoundInfo power;
    double ln_product_bound;
    std::vector<BlockBoundRow> blocks;
    std::optional<CountResult> exact;  ///< present when requested and d >= 1
};

/// All bounds for one (instance, eps), plus optionally the exact count under cap.
inline BoundReport bound_report(const ProblemInstance& inst, double eps, bool with_exact,
                                std::uint64_t cap = kDefaultCountCap) {
    BoundReport rep;
    rep.power = saturated_power_bound(inst, eps);
    const DyadicPartition part(inst.d());
    rep.ln_product_bound = 0.0;
    for (const auto& b : part.blocks()) {
        BlockBoundRow row;
        row.block_index = b.index;
        row.lo = b.lo;
        row.hi = b.hi;
        row.budget = block_budget(inst, b, eps);
        row.ln_power_bound = block_bound_budgeted_power(inst, b, eps);
        row.ln_sum_bound = block_bound_term_sum(inst, b, eps);
        rep.ln_product_bound += row.ln_power_bound;
        rep.blocks.push_back(row);
    }
    if (with_exact) rep.exact = count_exact(inst, eps, cap);
    return rep;
}

/// Diagnostic balance index: with the regularized envelope h of
/// h_hat(k) = ln(1/(gamma_k lambda_2)) / k^((1-s)/s), returns the largest l
/// with 2^(l+1) * 2^((l-1)(1-s)/s) * h(2^(l-1)) <= ln eps^-2, scanning
/// 2^(l-1) <= window. Empty when the first step already overshoots or the
/// crossing lies outside the window.
inline std::optional<std::uint64_t> balance_index(const ProblemInstance& inst, double s,
                                                  double eps, std::size_t window = 4096) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("balance_index: s must be in (0,1)");
    const double T = squared_threshold_log(eps);
    if (!(T > 0.0)) return std::nullopt;
    const double L2 = inst.lambdas().neg_log(2);
    std::vector<double> h_hat;
    h_hat.reserve(window);
    const double pw = (1.0 - s) / s;
    for (std::size_t k = 1; k <= window; ++k) {
        const double D = inst.gammas().neg_log(k) + L2;
        if (D <= 0.0)
            throw std::invalid_argument("balance_index: gamma_k * lambda_2 = 1 is degenerate");
        if (std::isinf(D)) break;
        h_hat.push_back(D / std::pow(static_cast<double>(k), pw));
    }
    if (h_hat.empty()) return std::nullopt;
    const std::vector<double> h = envelope_regularize(h_hat);
    const double ln2 = std::log(2.0);
    std::optional<std::uint64_t> best;
    for (std::uint64_t l = 1;; ++l) {
        const std::uint64_t idx = std::uint64_t{1} << (l - 1);
        if (idx > h.size()) break;
        const double ln_g = (static_cast<double>(l) + 1.0) * ln2 +
                            (static_cast<double>(l) - 1.0) * pw * ln2 +
                            std::log(h[idx - 1]);
        if (ln_g <= std::log(T))
            best = l;
        else
            break;
    }
    return best;
}

} // namespace wtp
