#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wtp {

/// Lower regularization of a positive sequence h_hat(1..K):
///   h_tilde(k) = min over j >= k of h_hat(j)        (suffix minimum),
///   h(1) = h_tilde(1),
///   h(k+1) = min( (ln(k+2)/ln(k+1)) * h(k), h_tilde(k+1) ).
///
/// Guarantees, for all 1 <= n < m <= K:
///   h is non-decreasing, h <= h_tilde <= h_hat,
///   h(m) <= (ln(m+1)/ln(n+1)) * h(n), and h(2n) <= 2 h(n).
inline std::vector<double> envelope_regularize(const std::vector<double>& h_hat) {
    if (h_hat.empty()) throw std::invalid_argument("envelope: input is empty");
    for (double v : h_hat)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("envelope: values must be finite and > 0");

    const std::size_t K = h_hat.size();
    std::vector<double> suffix_min(h_hat);
    for (std::size_t i = K - 1; i-- > 0;)
        suffix_min[i] = std::min(suffix_min[i], suffix_min[i + 1]);

    std::vector<double> h(K);
    h[0] = suffix_min[0];
    for (std::size_t k = 1; k < K; ++k) {
        const double grow = std::log(static_cast<double>(k + 2)) /
                            std::log(static_cast<double>(k + 1));
        h[k] = std::min(grow * h[k - 1], suffix_min[k]);
    }
    return h;
}

} // namespace wtp
