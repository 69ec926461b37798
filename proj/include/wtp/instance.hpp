#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "wtp/log_value.hpp"
#include "wtp/sequence_model.hpp"

namespace wtp {

/// Dimension count that may be unbounded (weights never dropping below the
/// threshold make every dimension active).
struct DimCount {
    bool infinite = false;
    std::uint64_t value = 0;

    static DimCount finite(std::uint64_t v) { return {false, v}; }
    static DimCount unbounded() { return {true, 0}; }

    friend bool operator==(const DimCount&, const DimCount&) = default;
};

/// ln(eps^-2): the product threshold on the log scale. Positive iff eps < 1.
inline double squared_threshold_log(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw std::invalid_argument("epsilon must be finite and > 0");
    return -2.0 * std::log(eps);
}

/// Largest j with lambda_j > eps^2 (strict, log-scale comparison, ties excluded);
/// 0 when eps >= 1.
inline std::uint64_t j_of_epsilon(const SequenceModel& lambdas, double eps) {
    if (lambdas.role() != SequenceRole::eigenvalues)
        throw std::invalid_argument("j_of_epsilon needs an eigenvalue sequence");
    return lambdas.threshold_index(squared_threshold_log(eps));
}

/// Largest d with gamma_d > eps^2; 0 when gamma_1 <= eps^2; unbounded when the
/// weights' infimum stays above eps^2.
inline DimCount d_of_epsilon(const SequenceModel& gammas, double eps) {
    if (gammas.role() != SequenceRole::weights)
        throw std::invalid_argument("d_of_epsilon needs a weight sequence");
    const double T = squared_threshold_log(eps);
    if (!(T > 0.0)) return DimCount::finite(0);
    if (gammas.infimum_neg_log() < T) return DimCount::unbounded();
    return DimCount::finite(gammas.threshold_index(T));
}

/// d-variate weighted tensor product: coordinate k uses eigenvalues
/// lambda_{k,1} = 1 and lambda_{k,j} = gamma_k * lambda_j for j >= 2.
class ProblemInstance {
public:
    ProblemInstance(std::uint64_t d, SequenceModel lambdas, SequenceModel gammas)
        : d_(d), lambdas_(std::move(lambdas)), gammas_(std::move(gammas)) {
        if (d_ < 1) throw std::invalid_argument("instance: d must be >= 1");
        if (lambdas_.role() != SequenceRole::eigenvalues)
            throw std::invalid_argument("instance: lambda sequence must have the eigenvalue role");
        if (gammas_.role() != SequenceRole::weights)
            throw std::invalid_argument("instance: gamma sequence must have the weight role");
    }

    std::uint64_t d() const { return d_; }
    const SequenceModel& lambdas() const { return lambdas_; }
    const SequenceModel& gammas() const { return gammas_; }

    /// -ln(lambda_{k,j}); exactly 0 for j = 1 regardless of the weight.
    double weighted_neg_log(std::uint64_t k, std::uint64_t j) const {
        if (j == 1) return 0.0;
        return gammas_.neg_log(k) + lambdas_.neg_log(j);
    }

    LogValue weighted_eigenvalue(std::uint64_t k, std::uint64_t j) const {
        return LogValue::from_log(-weighted_neg_log(k, j));
    }

private:
    std::uint64_t d_;
    SequenceModel lambdas_;
    SequenceModel gammas_;
};

} // namespace wtp
