#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace wtp {

/// Numeric policy for reading a limit off finitely many quotient samples.
/// Saturation thresholds short-circuit clear explosions/collapses; otherwise a
/// verdict needs a slack-monotone tail plus enough net change across it, so a
/// quotient settling toward a positive constant is not mistaken for a trend.
struct DiagnosticThresholds {
    double diverge = 1e3;
    double vanish = 1e-3;
    double mono_slack = 0.05;      ///< tolerated relative backsliding inside the tail
    double net_change = 0.95;      ///< call a trend only if last/first crosses this ratio
    double max_gap_fraction = 0.25;
    std::size_t min_probes = 8;
    double value_clamp = 1e300;    ///< +inf samples saturate here
};

enum class Trend { diverges, vanishes, bounded_positive, inconclusive };

inline const char* trend_name(Trend t) {
    switch (t) {
        case Trend::diverges: return "diverges";
        case Trend::vanishes: return "vanishes";
        case Trend::bounded_positive: return "bounded_positive";
        case Trend::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

struct DiagnosticSample {
    double probe;
    double value;  ///< clamped to [0, value_clamp]; meaningless when gap
    bool gap;
};

struct LimitDiagnostic {
    std::string name;
    std::vector<DiagnosticSample> samples;
    Trend trend = Trend::inconclusive;
    double trend_slope = 0.0;  ///< least-squares slope of ln value vs ln probe over the tail
    std::size_t gap_count = 0;
    std::size_t tail_start = 0;  ///< index into the usable (non-gap) subsequence
};

namespace detail {

inline bool slack_monotone_up(const std::vector<double>& v, double slack) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i + 1] < v[i] * (1.0 - slack)) return false;
    return true;
}

inline bool slack_monotone_down(const std::vector<double>& v, double slack) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i + 1] > v[i] * (1.0 + slack)) return false;
    return true;
}

inline double tail_log_slope(const std::vector<double>& probes,
                             const std::vector<double>& values) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !(probes[i] > 0.0)) continue;
        const double x = std::log(probes[i]), y = std::log(values[i]);
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 2) return 0.0;
    const double den = static_cast<double>(n) * sxx - sx * sx;
    if (den == 0.0) return 0.0;
    return (static_cast<double>(n) * sxy - sx * sy) / den;
}

} // namespace detail

/// Sample `quotient` on `probes` and classify the limiting behaviour.
/// A throwing call or NaN result is a gap; +inf clamps to the ceiling and a
/// negative value floors to 0. The verdict reads the tail (last third of the
/// usable samples): saturation beyond the thresholds wins first, then a
/// slack-monotone tail with enough net change, then a fully in-band tail as
/// bounded_positive; anything else is inconclusive.
template <typename Fn>
LimitDiagnostic run_limit_diagnostic(std::string name, Fn&& quotient,
                                     const std::vector<double>& probes,
                                     const DiagnosticThresholds& thr = {}) {
    LimitDiagnostic diag;
    diag.name = std::move(name);
    diag.samples.reserve(probes.size());
    for (double p : probes) {
        DiagnosticSample s{p, 0.0, false};
        double v = std::numeric_limits<double>::quiet_NaN();
        try {
            v = quotient(p);
        } catch (const std::exception&) {
            v = std::numeric_limits<double>::quiet_NaN();
        }
        if (std::isnan(v)) {
            s.gap = true;
            ++diag.gap_count;
        } else {
            s.value = std::clamp(v, 0.0, thr.value_clamp);
        }
        diag.samples.push_back(s);
    }

    std::vector<double> up, uv;  // usable probes/values in probe order
    for (const auto& s : diag.samples)
        if (!s.gap) {
            up.push_back(s.probe);
            uv.push_back(s.value);
        }

    if (probes.empty() ||
        static_cast<double>(diag.gap_count) >
            thr.max_gap_fraction * static_cast<double>(probes.size()) ||
        uv.size() < thr.min_probes) {
        diag.trend = Trend::inconclusive;
        return diag;
    }

    const std::size_t tail_len = (uv.size() + 2) / 3;
    diag.tail_start = uv.size() - tail_len;
    std::vector<double> tp(up.begin() + static_cast<std::ptrdiff_t>(diag.tail_start), up.end());
    std::vector<double> tv(uv.begin() + static_cast<std::ptrdiff_t>(diag.tail_start), uv.end());
    diag.trend_slope = detail::tail_log_slope(tp, tv);

    if (tv.size() < 3) {
        diag.trend = Trend::inconclusive;
        return diag;
    }

    const bool up_ok = detail::slack_monotone_up(tv, thr.mono_slack);
    const bool down_ok = detail::slack_monotone_down(tv, thr.mono_slack);
    bool all_above = true, all_below = true, all_in_band = true;
    for (double v : tv) {
        all_above = all_above && v > thr.diverge;
        all_below = all_below && v < thr.vanish;
        all_in_band = all_in_band && v >= thr.vanish && v <= thr.diverge;
    }

    if (all_above && up_ok) {
        diag.trend = Trend::diverges;
    } else if (all_below && down_ok) {
        diag.trend = Trend::vanishes;
    } else if (up_ok && tv.front() > 0.0 && tv.back() / tv.front() >= 1.0 / thr.net_change) {
        diag.trend = Trend::diverges;
    } else if (down_ok && tv.front() > 0.0 && tv.back() / tv.front() <= thr.net_change) {
        diag.trend = Trend::vanishes;
    } else if (all_in_band) {
        diag.trend = Trend::bounded_positive;
    } else {
        diag.trend = Trend::inconclusive;
    }
    return diag;
}

/// Probes for eps-indexed quotients: the value is p = ln(1/eps), doubling
/// from 2 to 2^14 (so eps runs from e^-2 down to e^-16384).
inline std::vector<double> epsilon_log_probe_grid() {
    std::vector<double> g;
    for (int e = 1; e <= 14; ++e) g.push_back(static_cast<double>(std::uint64_t{1} << e));
    return g;
}

/// Probes for sequence-indexed quotients: j doubling from 2 to 2^40.
inline std::vector<double> index_probe_grid() {
    std::vector<double> g;
    for (int e = 1; e <= 40; ++e) g.push_back(static_cast<double>(std::uint64_t{1} << e));
    return g;
}

} // namespace wtp
