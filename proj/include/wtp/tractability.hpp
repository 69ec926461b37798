#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wtp/errors.hpp"
#include "wtp/instance.hpp"
#include "wtp/limit_diagnostic.hpp"
#include "wtp/sequence_model.hpp"

namespace wtp {

enum class Verdict { holds, fails, inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

/// One tractability notion checked against one family pair. `certifying` is
/// true when the criterion is a full characterization evaluated under its own
/// hypotheses; one-sided conditions and the path-grid heuristic report false
/// and stay out of cross-notion consistency enforcement.
struct CriterionResult {
    std::string notion;
    std::string criterion;
    Verdict verdict = Verdict::inconclusive;
    bool certifying = true;
    std::vector<LimitDiagnostic> diagnostics;
    std::optional<double> exponent_estimate;  ///< tail max of the limit quotient; estimate, not certificate
    std::string note;
};

namespace detail {

inline double pos_inf() { return std::numeric_limits<double>::infinity(); }
inline double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

/// ln(x) extended by ln(x) = -inf for x <= 0.
inline double ln_pos(double x) { return x > 0.0 ? std::log(x) : -pos_inf(); }

/// ln(e^a + e^b) without overflow; +inf absorbs, two -inf stay -inf.
inline double log_add(double a, double b) {
    if (std::isinf(a) && a > 0.0) return a;
    if (std::isinf(b) && b > 0.0) return b;
    const double m = std::max(a, b);
    if (std::isinf(m)) return m;
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

inline std::string format_param(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

/// Max quotient value over the tail window; nullopt when every probe gapped.
inline std::optional<double> tail_max(const LimitDiagnostic& d) {
    std::vector<double> usable;
    for (const auto& s : d.samples)
        if (!s.gap) usable.push_back(s.value);
    if (usable.empty()) return std::nullopt;
    const std::size_t start = d.tail_start < usable.size() ? d.tail_start : 0;
    double m = usable[start];
    for (std::size_t i = start + 1; i < usable.size(); ++i) m = std::max(m, usable[i]);
    return m;
}

} // namespace detail

// ---- verdict algebra -------------------------------------------------------

/// Condition "quotient -> 0".
inline Verdict verdict_requires_vanishing(Trend t) {
    switch (t) {
        case Trend::vanishes: return Verdict::holds;
        case Trend::diverges:
        case Trend::bounded_positive: return Verdict::fails;
        case Trend::inconclusive: return Verdict::inconclusive;
    }
    return Verdict::inconclusive;
}

/// Condition "quotient -> infinity".
inline Verdict verdict_requires_divergence(Trend t) {
    switch (t) {
        case Trend::diverges: return Verdict::holds;
        case Trend::vanishes:
        case Trend::bounded_positive: return Verdict::fails;
        case Trend::inconclusive: return Verdict::inconclusive;
    }
    return Verdict::inconclusive;
}

/// Condition "limsup quotient < infinity".
inline Verdict verdict_requires_bounded(Trend t) {
    switch (t) {
        case Trend::vanishes:
        case Trend::bounded_positive: return Verdict::holds;
        case Trend::diverges: return Verdict::fails;
        case Trend::inconclusive: return Verdict::inconclusive;
    }
    return Verdict::inconclusive;
}

inline Verdict verdict_and(Verdict a, Verdict b) {
    if (a == Verdict::fails || b == Verdict::fails) return Verdict::fails;
    if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
    return Verdict::holds;
}

// ---- quotient diagnostics ---------------------------------------------------
// eps-indexed quotients sample at p = ln(1/eps) on the doubling grid, so the
// squared threshold is T = 2p. Conventions: ln j(eps) = 0 zeroes a quotient
// before any unbounded-d(eps) branch; an unbounded d(eps) otherwise saturates
// the quotient upward; a non-positive denominator log is a gap. Evaluation
// failures (including a range-exceeded threshold search) surface as gaps,
// which truncates the effective grid and is visible via gap_count.

/// lnln j(eps) / lnln(1/eps).
inline LimitDiagnostic quotient_lnln_threshold(const SequenceModel& lambdas,
                                               const DiagnosticThresholds& thr = {}) {
    return run_limit_diagnostic(
        "lnln j(eps) / lnln(1/eps)",
        [&](double p) {
            const double den = std::log(p);  // probe p = ln(1/eps)
            if (!(den > 0.0)) return detail::quiet_nan();
            const double ln_j = lambdas.ln_threshold_index(2.0 * p);
            return detail::ln_pos(ln_j) / den;  // -inf clamps to 0 downstream
        },
        epsilon_log_probe_grid(), thr);
}

/// d(eps)^(1-s) * ln j(eps) / (ln 1/eps)^s.
inline LimitDiagnostic quotient_threshold_power(const SequenceModel& lambdas,
                                                const SequenceModel& gammas, double s,
                                                const DiagnosticThresholds& thr = {}) {
    return run_limit_diagnostic(
        "d(eps)^(1-s) * ln j(eps) / (ln 1/eps)^" + detail::format_param(s),
        [&, s](double p) {
            const double ln_j = lambdas.ln_threshold_index(2.0 * p);
            if (!(ln_j > 0.0)) return 0.0;
            const double ln_d = gammas.ln_threshold_index(2.0 * p);
            if (std::isinf(ln_d)) return ln_d > 0.0 ? detail::pos_inf() : 0.0;
            return std::exp((1.0 - s) * ln_d + std::log(ln_j) - s * std::log(p));
        },
        epsilon_log_probe_grid(), thr);
}

/// d(eps) * ln j(eps) / lnln(1/eps).
inline LimitDiagnostic quotient_dim_threshold(const SequenceModel& lambdas,
                                              const SequenceModel& gammas,
                                              const DiagnosticThresholds& thr = {}) {
    return run_limit_diagnostic(
        "d(eps) * ln j(eps) / lnln(1/eps)",
        [&](double p) {
            const double den = std::log(p);  // probe p = ln(1/eps)
            if (!(den > 0.0)) return detail::quiet_nan();
            const double ln_j = lambdas.ln_threshold_index(2.0 * p);
            if (!(ln_j > 0.0)) return 0.0;
            const double ln_d = gammas.ln_threshold_index(2.0 * p);
            if (std::isinf(ln_d)) return ln_d > 0.0 ? detail::pos_inf() : 0.0;
            return std::exp(ln_d + std::log(ln_j) - std::log(den));
        },
        epsilon_log_probe_grid(), thr);
}

/// d(eps) * ln j(eps) / (ln d(eps) * lnln(1/eps)); d(eps) < 2 is a gap.
inline LimitDiagnostic quotient_dim_threshold_per_logdim(const SequenceModel& lambdas,
                                                         const SequenceModel& gammas,
                                                         const DiagnosticThresholds& thr = {}) {
    return run_limit_diagnostic(
        "d(eps) * ln j(eps) / (ln d(eps) * lnln(1/eps))",
        [&](double p) {
            const double den = std::log(p);  // probe p = ln(1/eps)
            if (!(den > 0.0)) return detail::quiet_nan();
            const double ln_j = lambdas.ln_threshold_index(2.0 * p);
            if (!(ln_j > 0.0)) return 0.0;
            const double ln_d = gammas.ln_threshold_index(2.0 * p);
            if (std::isinf(ln_d) && ln_d > 0.0) return detail::pos_inf();
            if (!(ln_d > 0.0)) return detail::quiet_nan();
            return std::exp(ln_d + std::log(ln_j) - std::log(ln_d) - std::log(den));
        },
        epsilon_log_probe_grid(), thr);
}

/// ln j(eps) / (ln 1/eps)^delta.
inline LimitDiagnostic quotient_threshold_ratio_power(const SequenceModel& lambdas, double delta,
                                                      const DiagnosticThresholds& thr = {}) {
    return run_limit_diagnostic(
        "ln j(eps) / (ln 1/eps)^" + detail::format_param(delta),
        [&, delta](double p) {
            const double ln_j = lambdas.ln_threshold_index(2.0 * p);
            if (!(ln_j > 0.0)) return 0.0;
            return std::exp(std::log(ln_j) - delta * std::log(p));
        },
        epsilon_log_probe_grid(), thr);
}

/// d(eps)^(1-s) / (ln 1/eps)^s.
inline LimitDiagnostic quotient_dimension_power(const SequenceModel& gammas, double s,
                                                const DiagnosticThresholds& thr = {}) {
    return run_limit_diagnostic(
        "d(eps)^(1-" + detail::format_param(s) + ") / (ln 1/eps)^" + detail::format_param(s),
        [&, s](double p) {
            const double ln_d = gammas.ln_threshold_index(2.0 * p);
            if (std::isinf(ln_d)) return ln_d > 0.0 ? detail::pos_inf() : 0.0;
            return std::exp((1.0 - s) * ln_d - s * std::log(p));
        },
        epsilon_log_probe_grid(), thr);
}

// j-indexed quotients sample at j doubling from 2 to 2^40; probes are exact
// powers of two so the cast back to an integer index is lossless.

/// lnln(1/lambda_j) / lnln j; j = 2 (lnln j < 0) is a gap.
inline LimitDiagnostic quotient_lnln_eigen(const SequenceModel& lambdas,
                                           const DiagnosticThresholds& thr = {}) {
    return run_limit_diagnostic(
        "lnln(1/lambda_j) / lnln j",
        [&](double x) {
            const auto j = static_cast<std::uint64_t>(x);
            const double den = std::log(std::log(x));
            if (!(den > 0.0)) return detail::quiet_nan();
            return lambdas.log_neg_log(j) / den;
        },
        index_probe_grid(), thr);
}

/// (ln(1/lambda_j))^sigma / ln j.
inline LimitDiagnostic quotient_eigen_power_log(const SequenceModel& lambdas, double sigma,
                                                const DiagnosticThresholds& thr = {}) {
    return run_limit_diagnostic(
        "(ln(1/lambda_j))^" + detail::format_param(sigma) + " / ln j",
        [&, sigma](double x) {
            const auto j = static_cast<std::uint64_t>(x);
            const double den = std::log(x);
            if (!(den > 0.0)) return detail::quiet_nan();
            return std::exp(sigma * lambdas.log_neg_log(j) - std::log(den));
        },
        index_probe_grid(), thr);
}

/// ln(1/gamma_j) / ln j.
inline LimitDiagnostic quotient_weight_log(const SequenceModel& gammas,
                                           const DiagnosticThresholds& thr = {}) {
    return run_limit_diagnostic(
        "ln(1/gamma_j) / ln j",
        [&](double x) {
            const auto j = static_cast<std::uint64_t>(x);
            const double den = std::log(x);
            if (!(den > 0.0)) return detail::quiet_nan();
            return std::exp(gammas.log_neg_log(j) - std::log(den));
        },
        index_probe_grid(), thr);
}

/// ln(1/gamma_j) / j^pw.
inline LimitDiagnostic quotient_weight_power(const SequenceModel& gammas, double pw,
                                             const DiagnosticThresholds& thr = {}) {
    return run_limit_diagnostic(
        "ln(1/gamma_j) / j^" + detail::format_param(pw),
        [&, pw](double x) {
            const auto j = static_cast<std::uint64_t>(x);
            return std::exp(gammas.log_neg_log(j) - pw * std::log(x));
        },
        index_probe_grid(), thr);
}

/// lnln(1/gamma_j) / ln j.
inline LimitDiagnostic quotient_lnln_weight(const SequenceModel& gammas,
                                            const DiagnosticThresholds& thr = {}) {
    return run_limit_diagnostic(
        "lnln(1/gamma_j) / ln j",
        [&](double x) {
            const auto j = static_cast<std::uint64_t>(x);
            const double den = std::log(x);
            if (!(den > 0.0)) return detail::quiet_nan();
            return gammas.log_neg_log(j) / den;
        },
        index_probe_grid(), thr);
}

/// (ln(1/gamma_j))^s / j^(1-s).
inline LimitDiagnostic quotient_weight_index_power(const SequenceModel& gammas, double s,
                                                   const DiagnosticThresholds& thr = {}) {
    return run_limit_diagnostic(
        "(ln(1/gamma_j))^" + detail::format_param(s) + " / j^(1-" + detail::format_param(s) + ")",
        [&, s](double x) {
            const auto j = static_cast<std::uint64_t>(x);
            return std::exp(s * gammas.log_neg_log(j) - (1.0 - s) * std::log(x));
        },
        index_probe_grid(), thr);
}

/// (ln(1/gamma_j))^alpha / j.
inline LimitDiagnostic quotient_weight_alpha_over_index(const SequenceModel& gammas, double alpha,
                                                        const DiagnosticThresholds& thr = {}) {
    return run_limit_diagnostic(
        "(ln(1/gamma_j))^" + detail::format_param(alpha) + " / j",
        [&, alpha](double x) {
            const auto j = static_cast<std::uint64_t>(x);
            return std::exp(alpha * gammas.log_neg_log(j) - std::log(x));
        },
        index_probe_grid(), thr);
}

// ---- criteria ---------------------------------------------------------------

namespace detail {

inline void require_arg(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

inline void require_roles(const SequenceModel& lambdas, const SequenceModel& gammas) {
    require_arg(lambdas.role() == SequenceRole::eigenvalues,
                "criterion: first sequence must be in the eigenvalue role");
    require_arg(gammas.role() == SequenceRole::weights,
                "criterion: second sequence must be in the weight role");
}

} // namespace detail

/// Characterization of EXP-(s,t)-WT for 0 < s < 1, 0 < t <= 1 through the
/// threshold functions: lnln j(eps)/lnln(1/eps) -> 0 and
/// d(eps)^(1-s) ln j(eps)/(ln 1/eps)^s -> 0.
inline CriterionResult criterion_st_wt_thresholds(const SequenceModel& lambdas,
                                                  const SequenceModel& gammas, double s, double t,
                                                  const DiagnosticThresholds& thr = {}) {
    detail::require_roles(lambdas, gammas);
    detail::require_arg(s > 0.0 && s < 1.0, "criterion_st_wt_thresholds: s must lie in (0,1)");
    detail::require_arg(t > 0.0 && t <= 1.0, "criterion_st_wt_thresholds: t must lie in (0,1]");
    CriterionResult r;
    r.notion = "EXP-(s,t)-WT s<1 t<=1";
    r.criterion = "lnln j(eps)/lnln(1/eps) -> 0 and d(eps)^(1-s) ln j(eps)/(ln 1/eps)^s -> 0 [s=" +
                  detail::format_param(s) + ", t=" + detail::format_param(t) + "]";
    r.diagnostics.push_back(quotient_lnln_threshold(lambdas, thr));
    r.diagnostics.push_back(quotient_threshold_power(lambdas, gammas, s, thr));
    r.verdict = verdict_and(verdict_requires_vanishing(r.diagnostics[0].trend),
                            verdict_requires_vanishing(r.diagnostics[1].trend));
    r.note = "characterization is t-independent within 0<t<=1";
    return r;
}

struct SequenceConditionPair {
    CriterionResult necessary;
    CriterionResult sufficient;
};

/// Sequence-level conditions for EXP-(s,t)-WT, 0 < s < 1, 0 < t <= 1:
/// necessary = lnln(1/lambda_j)/lnln j -> inf and ln(1/gamma_j)/j^((1-s)/s) -> inf;
/// sufficient = the first condition and ln(1/gamma_j)/j^((1-s)/s+delta) -> inf.
inline SequenceConditionPair criterion_st_wt_sequences(const SequenceModel& lambdas,
                                                       const SequenceModel& gammas, double s,
                                                       double delta,
                                                       const DiagnosticThresholds& thr = {}) {
    detail::require_roles(lambdas, gammas);
    detail::require_arg(s > 0.0 && s < 1.0, "criterion_st_wt_sequences: s must lie in (0,1)");
    detail::require_arg(delta > 0.0, "criterion_st_wt_sequences: delta must be > 0");
    const double pw = (1.0 - s) / s;
    const LimitDiagnostic eig = quotient_lnln_eigen(lambdas, thr);

    SequenceConditionPair pair;
    pair.necessary.notion = "EXP-(s,t)-WT s<1 t<=1 [necessary condition]";
    pair.necessary.criterion = "lnln(1/lambda_j)/lnln j -> inf and ln(1/gamma_j)/j^" +
                               detail::format_param(pw) + " -> inf [s=" + detail::format_param(s) + "]";
    pair.necessary.certifying = false;
    pair.necessary.diagnostics = {eig, quotient_weight_power(gammas, pw, thr)};
    pair.necessary.verdict =
        verdict_and(verdict_requires_divergence(pair.necessary.diagnostics[0].trend),
                    verdict_requires_divergence(pair.necessary.diagnostics[1].trend));
    pair.necessary.note = "necessary only: failing refutes the notion, holding does not certify it";

    pair.sufficient.notion = "EXP-(s,t)-WT s<1 t<=1 [sufficient condition]";
    pair.sufficient.criterion = "lnln(1/lambda_j)/lnln j -> inf and ln(1/gamma_j)/j^" +
                                detail::format_param(pw + delta) + " -> inf [s=" +
                                detail::format_param(s) + ", delta=" + detail::format_param(delta) + "]";
    pair.sufficient.certifying = false;
    pair.sufficient.diagnostics = {eig, quotient_weight_power(gammas, pw + delta, thr)};
    pair.sufficient.verdict =
        verdict_and(verdict_requires_divergence(pair.sufficient.diagnostics[0].trend),
                    verdict_requires_divergence(pair.sufficient.diagnostics[1].trend));
    pair.sufficient.note = "sufficient only: holding certifies the notion, failing does not refute it";
    return pair;
}

/// EXP-UWT characterization: lnln(1/lambda_j)/lnln j -> inf and
/// lnln(1/gamma_j)/ln j -> inf.
inline CriterionResult criterion_uwt(const SequenceModel& lambdas, const SequenceModel& gammas,
                                     const DiagnosticThresholds& thr = {}) {
    detail::require_roles(lambdas, gammas);
    CriterionResult r;
    r.notion = "EXP-UWT";
    r.criterion = "lnln(1/lambda_j)/lnln j -> inf and lnln(1/gamma_j)/ln j -> inf";
    r.diagnostics.push_back(quotient_lnln_eigen(lambdas, thr));
    r.diagnostics.push_back(quotient_lnln_weight(gammas, thr));
    r.verdict = verdict_and(verdict_requires_divergence(r.diagnostics[0].trend),
                            verdict_requires_divergence(r.diagnostics[1].trend));
    return r;
}

enum class CatalogNotion {
    spt,
    pt,
    qpt,
    wt,
    s1_t_below1,
    s1_t_above1,
    s_above1_t_at_most1,              ///< auto-branches on the second eigenvalue
    s_above1_t_at_most1_unit_second,  ///< explicit lambda_2 = 1 variant
    s_above1_t_above1,
    s_below1_t_above1,
};

/// Classic-notion catalog. s and t are read only by the regimes that use them
/// (callers pass 1,1 for spt/pt/qpt/wt).
inline CriterionResult criterion_catalog(const SequenceModel& lambdas, const SequenceModel& gammas,
                                         CatalogNotion notion, double s, double t,
                                         const DiagnosticThresholds& thr = {}) {
    detail::require_roles(lambdas, gammas);
    const bool gamma_decays = gammas.limit_zero();
    const bool lambda_decays = lambdas.limit_zero();
    const Verdict limits_zero =
        (gamma_decays && lambda_decays) ? Verdict::holds : Verdict::fails;

    CriterionResult r;
    switch (notion) {
        case CatalogNotion::spt:
        case CatalogNotion::pt: {
            r.notion = notion == CatalogNotion::spt ? "EXP-SPT" : "EXP-PT";
            r.criterion = "lim lambda_j = lim gamma_j = 0 and limsup d(eps) ln j(eps)/lnln(1/eps) < inf";
            r.diagnostics.push_back(quotient_dim_threshold(lambdas, gammas, thr));
            r.verdict = verdict_and(limits_zero, verdict_requires_bounded(r.diagnostics[0].trend));
            r.exponent_estimate = detail::tail_max(r.diagnostics[0]);
            r.note = gamma_decays
                         ? "exponent_estimate is a finite-grid tail max, a lower estimate of the limsup"
                         : "weights do not decay to zero";
            if (notion == CatalogNotion::pt)
                r.note += "; EXP-PT is characterized identically to EXP-SPT";
            return r;
        }
        case CatalogNotion::qpt: {
            r.notion = "EXP-QPT";
            r.criterion =
                "lim lambda_j = lim gamma_j = 0 and limsup d(eps) ln j(eps)/(ln d(eps) lnln(1/eps)) < inf";
            r.diagnostics.push_back(quotient_dim_threshold_per_logdim(lambdas, gammas, thr));
            r.verdict = verdict_and(limits_zero, verdict_requires_bounded(r.diagnostics[0].trend));
            r.exponent_estimate = detail::tail_max(r.diagnostics[0]);
            r.note = gamma_decays
                         ? "exponent_estimate is a finite-grid tail max, a lower estimate of the limsup"
                         : "weights do not decay to zero";
            return r;
        }
        case CatalogNotion::wt: {
            r.notion = "EXP-WT";
            r.criterion = "lim gamma_j = 0 and ln(1/lambda_j)/ln j -> inf";
            r.diagnostics.push_back(quotient_eigen_power_log(lambdas, 1.0, thr));
            r.verdict = verdict_and(gamma_decays ? Verdict::holds : Verdict::fails,
                                    verdict_requires_divergence(r.diagnostics[0].trend));
            if (!gamma_decays) r.note = "weights do not decay to zero";
            return r;
        }
        case CatalogNotion::s1_t_below1: {
            detail::require_arg(t > 0.0 && t < 1.0, "catalog regime s=1, t<1 needs t in (0,1)");
            r.notion = "EXP-(1,t)-WT t<1";
            r.criterion = "ln(1/gamma_j)/ln j -> inf and ln(1/lambda_j)/ln j -> inf";
            r.diagnostics.push_back(quotient_weight_log(gammas, thr));
            r.diagnostics.push_back(quotient_eigen_power_log(lambdas, 1.0, thr));
            r.verdict = verdict_and(verdict_requires_divergence(r.diagnostics[0].trend),
                                    verdict_requires_divergence(r.diagnostics[1].trend));
            r.note = "condition is t-independent within 0<t<1";
            return r;
        }
        case CatalogNotion::s1_t_above1: {
            detail::require_arg(t > 1.0, "catalog regime s=1, t>1 needs t > 1");
            r.notion = "EXP-(1,t)-WT t>1";
            r.criterion = "ln(1/lambda_j)/ln j -> inf (weights arbitrary)";
            r.diagnostics.push_back(quotient_eigen_power_log(lambdas, 1.0, thr));
            r.verdict = verdict_requires_divergence(r.diagnostics[0].trend);
            return r;
        }
        case CatalogNotion::s_above1_t_at_most1: {
            detail::require_arg(s > 1.0 && t > 0.0 && t <= 1.0,
                                "catalog regime s>1, t<=1 needs s > 1 and t in (0,1]");
            const bool unit_second = lambdas.neg_log(2) == 0.0;
            r.notion = "EXP-(s,t)-WT s>1 t<=1";
            r.diagnostics.push_back(quotient_eigen_power_log(lambdas, s, thr));
            if (unit_second) {
                const bool side = gammas.has_entry_below_one();
                r.criterion = "(ln(1/lambda_j))^" + detail::format_param(s) +
                              " / ln j -> inf and some gamma_p < 1";
                r.verdict = verdict_and(side ? Verdict::holds : Verdict::fails,
                                        verdict_requires_divergence(r.diagnostics[0].trend));
                r.note = side ? "second eigenvalue equals 1; a weight below 1 exists (resolved analytically)"
                              : "second eigenvalue equals 1 and no weight is below 1";
            } else {
                r.criterion = "(ln(1/lambda_j))^" + detail::format_param(s) +
                              " / ln j -> inf (weights arbitrary)";
                r.verdict = verdict_requires_divergence(r.diagnostics[0].trend);
                r.note = "second eigenvalue is below 1";
            }
            return r;
        }
        case CatalogNotion::s_above1_t_at_most1_unit_second: {
            detail::require_arg(s > 1.0 && t > 0.0 && t <= 1.0,
                                "catalog regime s>1, t<=1 needs s > 1 and t in (0,1]");
            detail::require_arg(lambdas.neg_log(2) == 0.0,
                                "regime mismatch: second eigenvalue is below one");
            return criterion_catalog(lambdas, gammas, CatalogNotion::s_above1_t_at_most1, s, t, thr);
        }
        case CatalogNotion::s_above1_t_above1: {
            detail::require_arg(s > 1.0 && t > 1.0, "catalog regime s>1, t>1 needs s > 1 and t > 1");
            r.notion = "EXP-(s,t)-WT s>1 t>1";
            r.criterion = "(ln(1/lambda_j))^" + detail::format_param(s) +
                          " / ln j -> inf (weights arbitrary)";
            r.diagnostics.push_back(quotient_eigen_power_log(lambdas, s, thr));
            r.verdict = verdict_requires_divergence(r.diagnostics[0].trend);
            return r;
        }
        case CatalogNotion::s_below1_t_above1: {
            detail::require_arg(s > 0.0 && s < 1.0 && t > 1.0,
                                "catalog regime s<1, t>1 needs s in (0,1) and t > 1");
            const double eta = s * (t - 1.0) / (t - s);
            r.notion = "EXP-(s,t)-WT s<1 t>1";
            r.criterion = "(ln(1/lambda_j))^eta / ln j -> inf with eta=" + detail::format_param(eta) +
                          " (weights arbitrary) [s=" + detail::format_param(s) + ", t=" +
                          detail::format_param(t) + "]";
            r.diagnostics.push_back(quotient_eigen_power_log(lambdas, eta, thr));
            r.verdict = verdict_requires_divergence(r.diagnostics[0].trend);
            return r;
        }
    }
    throw std::invalid_argument("criterion_catalog: unknown notion");
}

/// Heuristic for EXP-(s,1)-WT with 0 < s < 1: samples the quotient
/// ((ln 1/gamma_k)^s + (ln 1/lambda_j)^s) / (d^(1-s) ln j) along a fixed
/// finite family of (d,k,j) paths with d + gamma_k^-d lambda_j^-d -> inf.
/// Every probed path grows j or k; paths with both indices pinned are
/// excluded because their quotient vanishes for every model, which would
/// make the verdict constant. Holds only when every probed path diverges.
/// Never certifying: the paths do not exhaust the 3-parameter net the
/// condition quantifies over.
inline CriterionResult criterion_st_wt_grid(const SequenceModel& lambdas,
                                            const SequenceModel& gammas, double s,
                                            const DiagnosticThresholds& thr = {}) {
    detail::require_roles(lambdas, gammas);
    detail::require_arg(s > 0.0 && s < 1.0, "criterion_st_wt_grid: s must lie in (0,1)");

    const auto path_quotient = [&, s](std::uint64_t d, std::uint64_t k, std::uint64_t j) {
        const double num =
            detail::log_add(s * gammas.log_neg_log(k), s * lambdas.log_neg_log(j));
        const double den = (1.0 - s) * std::log(static_cast<double>(d)) +
                           std::log(std::log(static_cast<double>(j)));
        return std::exp(num - den);
    };

    constexpr int kMaxExp = 20;
    std::vector<double> dyadic;
    for (int n = 1; n <= kMaxExp; ++n) dyadic.push_back(std::ldexp(1.0, n));

    CriterionResult r;
    r.notion = "EXP-(s,1)-WT s<1 [path grid]";
    r.criterion = "((ln 1/gamma_k)^s + (ln 1/lambda_j)^s)/(d^(1-s) ln j) -> inf on all probed paths [s=" +
                  detail::format_param(s) + "]";
    r.certifying = false;
    r.note = "path-grid heuristic; divergence on the probed paths is evidence, not proof";

    std::vector<double> linear;
    for (int n = 1; n <= 40; ++n) linear.push_back(static_cast<double>(n));

    r.diagnostics.push_back(run_limit_diagnostic(
        "path d=2, k=1, j->inf",
        [&](double p) { return path_quotient(2, 1, static_cast<std::uint64_t>(p)); }, dyadic, thr));
    r.diagnostics.push_back(run_limit_diagnostic(
        "path d->inf, k=1, j=2^d",
        [&](double p) {
            const auto d = static_cast<std::uint64_t>(p);
            return path_quotient(d, 1, std::uint64_t{1} << d);
        },
        linear, thr));
    r.diagnostics.push_back(run_limit_diagnostic(
        "path d->inf, k=d, j=2",
        [&](double p) {
            const auto d = static_cast<std::uint64_t>(p);
            return path_quotient(d, d, 2);
        },
        dyadic, thr));
    r.diagnostics.push_back(run_limit_diagnostic(
        "path d->inf, k=d, j=d",
        [&](double p) {
            const auto d = static_cast<std::uint64_t>(p);
            return path_quotient(d, d, d);
        },
        dyadic, thr));
    r.diagnostics.push_back(run_limit_diagnostic(
        "path d=4, k=1, j->inf",
        [&](double p) { return path_quotient(4, 1, static_cast<std::uint64_t>(p)); }, dyadic, thr));
    std::vector<double> quartic;  // d = 4^m keeps sqrt(d) doubling probe to probe
    for (int m = 1; m <= 10; ++m) quartic.push_back(std::ldexp(1.0, 2 * m));
    r.diagnostics.push_back(run_limit_diagnostic(
        "path d->inf, k=j=sqrt(d)",
        [&](double p) {
            const auto d = static_cast<std::uint64_t>(p);
            const auto kj = static_cast<std::uint64_t>(std::llround(std::sqrt(p)));
            return path_quotient(d, kj, kj);
        },
        quartic, thr));

    bool any_fail = false, all_diverge = true;
    for (const auto& d : r.diagnostics) {
        if (d.trend != Trend::diverges) all_diverge = false;
        if (d.trend == Trend::vanishes || d.trend == Trend::bounded_positive) any_fail = true;
    }
    r.verdict = any_fail ? Verdict::fails
                         : (all_diverge ? Verdict::holds : Verdict::inconclusive);
    return r;
}

// ---- full classification ----------------------------------------------------

struct ClassifyParams {
    double s = 0.5;      ///< (s,t) regime parameter for the s<1, t<=1 criteria
    double t = 0.5;
    double delta = 0.5;  ///< extra weight-power margin for the sufficient condition
    double s_gt1 = 2.0;  ///< representative s for the s>1 regimes
    double t_gt1 = 2.0;  ///< representative t for the t>1 regimes
    DiagnosticThresholds thresholds{};
};

struct ClassificationReport {
    std::vector<CriterionResult> entries;
    std::vector<std::string> checked_implications;
};

/// Evaluates the whole catalog in a fixed order and enforces the cross-notion
/// consistency rules on certifying entries with definite verdicts. A violated
/// implication is an internal error, not a report.
inline ClassificationReport classify(const SequenceModel& lambdas, const SequenceModel& gammas,
                                     const ClassifyParams& ps = {}) {
    detail::require_roles(lambdas, gammas);
    detail::require_arg(ps.s > 0.0 && ps.s < 1.0, "classify: s must lie in (0,1)");
    detail::require_arg(ps.t > 0.0 && ps.t <= 1.0, "classify: t must lie in (0,1]");
    detail::require_arg(ps.delta > 0.0, "classify: delta must be > 0");
    detail::require_arg(ps.s_gt1 > 1.0, "classify: s_gt1 must be > 1");
    detail::require_arg(ps.t_gt1 > 1.0, "classify: t_gt1 must be > 1");
    const auto& thr = ps.thresholds;

    const CriterionResult spt = criterion_catalog(lambdas, gammas, CatalogNotion::spt, 1, 1, thr);
    const CriterionResult pt = criterion_catalog(lambdas, gammas, CatalogNotion::pt, 1, 1, thr);
    const CriterionResult qpt = criterion_catalog(lambdas, gammas, CatalogNotion::qpt, 1, 1, thr);
    const CriterionResult wt = criterion_catalog(lambdas, gammas, CatalogNotion::wt, 1, 1, thr);
    const CriterionResult one_t_lt = criterion_catalog(
        lambdas, gammas, CatalogNotion::s1_t_below1, 1.0, ps.t < 1.0 ? ps.t : 0.5, thr);
    const CriterionResult one_t_gt =
        criterion_catalog(lambdas, gammas, CatalogNotion::s1_t_above1, 1.0, ps.t_gt1, thr);
    const CriterionResult s_le =
        criterion_catalog(lambdas, gammas, CatalogNotion::s_above1_t_at_most1, ps.s_gt1, ps.t, thr);
    const CriterionResult s_gt = criterion_catalog(lambdas, gammas, CatalogNotion::s_above1_t_above1,
                                                   ps.s_gt1, ps.t_gt1, thr);
    const CriterionResult st_mixed = criterion_catalog(
        lambdas, gammas, CatalogNotion::s_below1_t_above1, ps.s, ps.t_gt1, thr);
    const CriterionResult grid = criterion_st_wt_grid(lambdas, gammas, ps.s, thr);
    const CriterionResult thresholds_pair =
        criterion_st_wt_thresholds(lambdas, gammas, ps.s, ps.t, thr);
    const SequenceConditionPair seq = criterion_st_wt_sequences(lambdas, gammas, ps.s, ps.delta, thr);
    const CriterionResult uwt = criterion_uwt(lambdas, gammas, thr);

    ClassificationReport rep;
    rep.entries = {spt,      pt,   qpt,        wt,       one_t_lt,      one_t_gt,
                   s_le,     s_gt, st_mixed,   grid,     thresholds_pair,
                   seq.necessary, seq.sufficient, uwt};

    auto implies = [&rep](const CriterionResult& a, const CriterionResult& b) {
        rep.checked_implications.push_back(a.notion + " => " + b.notion);
        if (a.verdict == Verdict::holds && b.verdict == Verdict::fails)
            throw internal_error("implication violated: " + a.notion + " holds but " + b.notion +
                                 " fails");
    };

    rep.checked_implications.push_back("EXP-SPT == EXP-PT");
    if (spt.verdict != pt.verdict)
        throw internal_error("EXP-SPT and EXP-PT verdicts must coincide");
    implies(spt, qpt);
    implies(qpt, wt);
    for (const CriterionResult* e : {&one_t_lt, &one_t_gt, &s_le, &s_gt, &st_mixed, &thresholds_pair})
        implies(uwt, *e);
    return rep;
}

// ---- pairwise equivalence crosschecks ----------------------------------------
// Numeric consistency checks between provably equivalent limit conditions,
// evaluated on one family. Used by tests; inapplicable or undecided sides are
// never treated as contradictions.

enum class ConditionState { satisfied, violated, undecided };

inline const char* condition_state_name(ConditionState s) {
    switch (s) {
        case ConditionState::satisfied: return "satisfied";
        case ConditionState::violated: return "violated";
        case ConditionState::undecided: return "undecided";
    }
    return "undecided";
}

inline ConditionState state_requires_vanishing(Trend t) {
    switch (verdict_requires_vanishing(t)) {
        case Verdict::holds: return ConditionState::satisfied;
        case Verdict::fails: return ConditionState::violated;
        case Verdict::inconclusive: return ConditionState::undecided;
    }
    return ConditionState::undecided;
}

inline ConditionState state_requires_divergence(Trend t) {
    switch (verdict_requires_divergence(t)) {
        case Verdict::holds: return ConditionState::satisfied;
        case Verdict::fails: return ConditionState::violated;
        case Verdict::inconclusive: return ConditionState::undecided;
    }
    return ConditionState::undecided;
}

/// Conjunction over a probed "for all parameters" family of conditions:
/// any violated member refutes it, all satisfied confirms it.
inline ConditionState aggregate_all(std::initializer_list<ConditionState> xs) {
    bool undecided = false;
    for (ConditionState x : xs) {
        if (x == ConditionState::violated) return ConditionState::violated;
        if (x == ConditionState::undecided) undecided = true;
    }
    return undecided ? ConditionState::undecided : ConditionState::satisfied;
}

struct EquivalenceCheck {
    std::string name;
    ConditionState left = ConditionState::undecided;
    ConditionState right = ConditionState::undecided;
    bool applicable = true;  ///< hypothesis of the equivalence holds for the family

    bool consistent() const {
        if (!applicable) return true;
        if (left == ConditionState::undecided || right == ConditionState::undecided) return true;
        return left == right;
    }
};

/// Evaluates every equivalent-condition pair on one family pair:
/// eigenvalue-side (lnln-threshold vs lnln-decay vs threshold-ratio powers vs
/// powered-log ratios) and weight-side (dimension power vs index power,
/// lnln-decay vs powered-index ratios; these require decaying weights).
inline std::vector<EquivalenceCheck> equivalence_crosschecks(const SequenceModel& lambdas,
                                                             const SequenceModel& gammas,
                                                             const DiagnosticThresholds& thr = {}) {
    detail::require_roles(lambdas, gammas);
    std::vector<EquivalenceCheck> out;

    const ConditionState e_thresh = state_requires_vanishing(quotient_lnln_threshold(lambdas, thr).trend);
    const ConditionState e_decay = state_requires_divergence(quotient_lnln_eigen(lambdas, thr).trend);
    out.push_back({"lnln-threshold vs lnln-eigen-decay", e_thresh, e_decay, true});

    const ConditionState ratio_all = aggregate_all({
        state_requires_vanishing(quotient_threshold_ratio_power(lambdas, 0.25, thr).trend),
        state_requires_vanishing(quotient_threshold_ratio_power(lambdas, 0.5, thr).trend),
        state_requires_vanishing(quotient_threshold_ratio_power(lambdas, 0.75, thr).trend),
    });
    out.push_back({"lnln-threshold vs threshold-ratio-power (all delta)", e_thresh, ratio_all, true});

    const ConditionState powered_all = aggregate_all({
        state_requires_divergence(quotient_eigen_power_log(lambdas, 0.1, thr).trend),
        state_requires_divergence(quotient_eigen_power_log(lambdas, 0.25, thr).trend),
        state_requires_divergence(quotient_eigen_power_log(lambdas, 0.5, thr).trend),
    });
    out.push_back({"lnln-eigen-decay vs eigen-power-log (all alpha)", e_decay, powered_all, true});

    const bool weights_decay = gammas.limit_zero();
    for (double s : {0.25, 0.5, 0.75}) {
        out.push_back({"dimension-power vs weight-index-power s=" + detail::format_param(s),
                       state_requires_vanishing(quotient_dimension_power(gammas, s, thr).trend),
                       state_requires_divergence(quotient_weight_index_power(gammas, s, thr).trend),
                       weights_decay});
    }

    const ConditionState w_decay = state_requires_divergence(quotient_lnln_weight(gammas, thr).trend);
    const ConditionState w_powered_all = aggregate_all({
        state_requires_divergence(quotient_weight_alpha_over_index(gammas, 0.1, thr).trend),
        state_requires_divergence(quotient_weight_alpha_over_index(gammas, 0.25, thr).trend),
        state_requires_divergence(quotient_weight_alpha_over_index(gammas, 0.5, thr).trend),
    });
    out.push_back(
        {"lnln-weight-decay vs weight-power-over-index (all alpha)", w_decay, w_powered_all, weights_decay});
    return out;
}

} // namespace wtp
