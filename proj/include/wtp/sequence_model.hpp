#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wtp/errors.hpp"
#include "wtp/log_value.hpp"

namespace wtp {

enum class SequenceRole { eigenvalues, weights };

enum class TailRule { none, zero, geometric };

/// One-sided infinite, non-increasing sequence over indices j = 1, 2, ...
///
/// Eigenvalue role: first entry 1, entries in [0, 1], limit 0. Zero entries are
/// legal only through an explicit list (zero tail or explicit zeros).
/// Weight role: entries in (0, 1], non-increasing; limit may stay positive.
///
/// Everything evaluates on the log scale. neg_log(j) = -ln(entry_j) is the
/// primitive; log_neg_log(j) = ln(neg_log(j)) is computed per family without
/// exponentiating, so doubly-exponential decay stays finite at j = 2^40.
class SequenceModel {
public:
    enum class Family { poly, geometric, exp_log_pow, exp_linear, exp_power, exp_exp, const_one, list };

    static constexpr std::uint64_t kSearchCap = std::uint64_t{1} << 62;

    // ---- factories -------------------------------------------------------

    /// entry_j = j^-alpha. Both roles; first entry is 1 automatically.
    static SequenceModel poly(SequenceRole role, double alpha) {
        require(std::isfinite(alpha) && alpha > 0.0, "poly: alpha must be finite and > 0");
        SequenceModel m(role, Family::poly);
        m.a_ = alpha;
        m.finish();
        return m;
    }

    /// Eigenvalues: entry_j = q^(j-1) (first entry 1). Weights: entry_j = q^j.
    /// q in (0,1); a constant sequence is the const_one family instead.
    static SequenceModel geometric(SequenceRole role, double q) {
        require(std::isfinite(q) && q > 0.0 && q < 1.0,
                "geometric: q must lie in (0,1); use constone for a constant weight");
        SequenceModel m(role, Family::geometric);
        m.a_ = q;
        m.c_ = -std::log(q);
        m.finish();
        return m;
    }

    /// entry_j = exp(-(ln j)^beta), beta > 1. Eigenvalue role only.
    static SequenceModel exp_log_pow(SequenceRole role, double beta) {
        require(role == SequenceRole::eigenvalues, "explogpow: eigenvalue role only");
        require(std::isfinite(beta) && beta > 1.0, "explogpow: beta must be > 1");
        SequenceModel m(role, Family::exp_log_pow);
        m.b_ = beta;
        m.finish();
        return m;
    }

    /// entry_1 = 1, entry_j = exp(-c j) for j >= 2. Eigenvalue role only.
    static SequenceModel exp_linear(SequenceRole role, double c) {
        require(role == SequenceRole::eigenvalues, "explinear: eigenvalue role only");
        require(std::isfinite(c) && c > 0.0, "explinear: c must be > 0");
        SequenceModel m(role, Family::exp_linear);
        m.c_ = c;
        m.finish();
        return m;
    }

    /// entry_j = exp(-c j^beta). Weight role only; beta = 1 is plain
    /// exponential weight decay, beta = 2 is Gaussian-type decay.
    static SequenceModel exp_power(SequenceRole role, double c, double beta) {
        require(role == SequenceRole::weights, "exppower: weight role only");
        require(std::isfinite(c) && c > 0.0, "exppower: c must be > 0");
        require(std::isfinite(beta) && beta > 0.0, "exppower: beta must be > 0");
        SequenceModel m(role, Family::exp_power);
        m.c_ = c;
        m.b_ = beta;
        m.finish();
        return m;
    }

    /// entry_j = exp(-e^(c j)); for the eigenvalue role entry_1 is pinned to 1.
    static SequenceModel exp_exp(SequenceRole role, double c) {
        require(std::isfinite(c) && c > 0.0, "expexp: c must be > 0");
        SequenceModel m(role, Family::exp_exp);
        m.c_ = c;
        m.finish();
        return m;
    }

    /// entry_j = 1 for all j. Weight role only (an eigenvalue sequence must decay).
    static SequenceModel const_one(SequenceRole role) {
        require(role == SequenceRole::weights, "constone: weight role only");
        SequenceModel m(role, Family::const_one);
        m.finish();
        return m;
    }

    /// Explicit finite prefix plus a declared tail. Tail zero: entries vanish past
    /// the prefix (eigenvalues only). Tail geometric q: entries continue as
    /// last * q^(j - prefix_len), q in (0,1].
    static SequenceModel from_values(SequenceRole role, std::vector<double> values,
                                     TailRule tail, double tail_q = 0.0) {
        std::vector<std::string> problems;
        if (values.empty()) problems.push_back("list: needs at least one value");
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double v = values[i];
            if (!std::isfinite(v)) problems.push_back("list: value " + std::to_string(i + 1) + " is not finite");
            else if (role == SequenceRole::weights && !(v > 0.0))
                problems.push_back("list: weight " + std::to_string(i + 1) + " must be > 0");
            else if (v < 0.0) problems.push_back("list: value " + std::to_string(i + 1) + " is negative");
            else if (v > 1.0) problems.push_back("list: value " + std::to_string(i + 1) + " exceeds 1");
        }
        if (!values.empty() && role == SequenceRole::eigenvalues && values.front() != 1.0)
            problems.push_back("list: first eigenvalue must equal 1");
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            if (values[i + 1] > values[i])
                problems.push_back("list: values must be non-increasing (violated at index " + std::to_string(i + 2) + ")");
        if (tail == TailRule::none) problems.push_back("list: tail directive required (zero or geometric)");
        if (tail == TailRule::zero && role == SequenceRole::weights)
            problems.push_back("list: zero tail is invalid for weights (weights must stay positive)");
        if (tail == TailRule::geometric && !(std::isfinite(tail_q) && tail_q > 0.0 && tail_q <= 1.0))
            problems.push_back("list: geometric tail needs q in (0,1]");
        if (role == SequenceRole::eigenvalues && tail == TailRule::geometric && tail_q == 1.0 &&
            !values.empty() && values.back() > 0.0)
            problems.push_back("list: eigenvalues must decay to zero; constant positive tail is invalid");
        if (!problems.empty()) {
            std::string msg;
            for (const auto& p : problems) {
                if (!msg.empty()) msg += "; ";
                msg += p;
            }
            throw std::invalid_argument(msg);
        }

        SequenceModel m(role, Family::list);
        m.values_ = std::move(values);
        m.tail_ = tail;
        m.a_ = tail_q;
        m.neg_logs_.reserve(m.values_.size());
        for (double v : m.values_)
            m.neg_logs_.push_back(v > 0.0 ? -std::log(v) : std::numeric_limits<double>::infinity());
        m.c_ = (tail == TailRule::geometric) ? -std::log(tail_q) : 0.0;
        m.finish();
        return m;
    }

    /// Text file: one value per line, then a final directive line
    /// "tail zero" or "tail geometric q=<value>". Blank lines and lines starting
    /// with '#' are ignored.
    static SequenceModel from_file(SequenceRole role, const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("list file: cannot open " + path);
        std::vector<double> values;
        TailRule tail = TailRule::none;
        double tail_q = 0.0;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string t = trim(line);
            if (t.empty() || t.front() == '#') continue;
            if (t.rfind("tail", 0) == 0) {
                if (tail != TailRule::none)
                    throw std::invalid_argument("list file: duplicate tail directive at line " + std::to_string(lineno));
                std::istringstream ts(t.substr(4));
                std::string kind;
                ts >> kind;
                if (kind == "zero") {
                    tail = TailRule::zero;
                } else if (kind == "geometric") {
                    std::string kv;
                    ts >> kv;
                    if (kv.rfind("q=", 0) != 0)
                        throw std::invalid_argument("list file: geometric tail needs q=<value> at line " + std::to_string(lineno));
                    tail = TailRule::geometric;
                    tail_q = parse_double(kv.substr(2), "list file tail q");
                } else {
                    throw std::invalid_argument("list file: unknown tail kind '" + kind + "' at line " + std::to_string(lineno));
                }
                continue;
            }
            if (tail != TailRule::none)
                throw std::invalid_argument("list file: values after tail directive at line " + std::to_string(lineno));
            values.push_back(parse_double(t, "list file value at line " + std::to_string(lineno)));
        }
        if (tail == TailRule::none)
            throw std::invalid_argument("list file: missing final tail directive (tail zero | tail geometric q=<value>)");
        return from_values(role, std::move(values), tail, tail_q);
    }

    /// Parse "family key=value ..." (e.g. "geometric q=0.5", "poly alpha=2",
    /// "list file=seq.txt", "constone").
    static SequenceModel parse(SequenceRole role, const std::string& text) {
        std::istringstream in(trim(text));
        std::string id;
        in >> id;
        if (id.empty()) throw std::invalid_argument("sequence spec: empty");
        std::vector<std::pair<std::string, std::string>> kv;
        std::string tok;
        while (in >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("sequence spec: expected key=value, got '" + tok + "'");
            kv.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
        }
        auto num = [&](const char* key) {
            for (const auto& [k, v] : kv)
                if (k == key) return parse_double(v, std::string("sequence spec ") + key);
            throw std::invalid_argument(std::string("sequence spec: missing ") + key + " for family " + id);
        };
        auto expect_n = [&](std::size_t n) {
            if (kv.size() != n)
                throw std::invalid_argument("sequence spec: family " + id + " takes " +
                                            std::to_string(n) + " parameter(s)");
        };
        if (id == "poly") { expect_n(1); return poly(role, num("alpha")); }
        if (id == "geometric") { expect_n(1); return geometric(role, num("q")); }
        if (id == "explogpow") { expect_n(1); return exp_log_pow(role, num("beta")); }
        if (id == "explinear") { expect_n(1); return exp_linear(role, num("c")); }
        if (id == "exppower") { expect_n(2); return exp_power(role, num("c"), num("beta")); }
        if (id == "expexp") { expect_n(1); return exp_exp(role, num("c")); }
        if (id == "constone") { expect_n(0); return const_one(role); }
        if (id == "list") {
            expect_n(1);
            for (const auto& [k, v] : kv)
                if (k == "file") return from_file(role, v);
            throw std::invalid_argument("sequence spec: list needs file=<path>");
        }
        throw std::invalid_argument("sequence spec: unknown family '" + id + "'");
    }

    // ---- evaluation ------------------------------------------------------

    SequenceRole role() const { return role_; }
    Family family() const { return family_; }

    /// -ln(entry_j); 0 for entry 1, +inf for entry 0. Non-decreasing in j.
    double neg_log(std::uint64_t j) const {
        const double inf = std::numeric_limits<double>::infinity();
        switch (family_) {
            case Family::poly: return a_ * std::log(static_cast<double>(j));
            case Family::geometric:
                return role_ == SequenceRole::eigenvalues
                           ? static_cast<double>(j - 1) * c_
                           : static_cast<double>(j) * c_;
            case Family::exp_log_pow: return std::pow(std::log(static_cast<double>(j)), b_);
            case Family::exp_linear: return j == 1 ? 0.0 : c_ * static_cast<double>(j);
            case Family::exp_power: return c_ * std::pow(static_cast<double>(j), b_);
            case Family::exp_exp:
                if (role_ == SequenceRole::eigenvalues && j == 1) return 0.0;
                return std::exp(c_ * static_cast<double>(j));
            case Family::const_one: return 0.0;
            case Family::list:
                if (j <= values_.size()) return neg_logs_[j - 1];
                if (tail_ == TailRule::zero) return inf;
                return neg_logs_.back() + static_cast<double>(j - values_.size()) * c_;
        }
        return inf;
    }

    /// ln(neg_log(j)), computed family-wise so it stays finite where
    /// neg_log overflows. -inf where the entry equals 1, +inf where it is 0.
    double log_neg_log(std::uint64_t j) const {
        const double inf = std::numeric_limits<double>::infinity();
        const double dj = static_cast<double>(j);
        switch (family_) {
            case Family::poly:
                return j == 1 ? -inf : std::log(a_) + std::log(std::log(dj));
            case Family::geometric:
                if (role_ == SequenceRole::eigenvalues)
                    return j == 1 ? -inf : std::log(dj - 1.0) + std::log(c_);
                return std::log(dj) + std::log(c_);
            case Family::exp_log_pow:
                return j == 1 ? -inf : b_ * std::log(std::log(dj));
            case Family::exp_linear:
                return j == 1 ? -inf : std::log(c_) + std::log(dj);
            case Family::exp_power:
                return std::log(c_) + b_ * std::log(dj);
            case Family::exp_exp:
                if (role_ == SequenceRole::eigenvalues && j == 1) return -inf;
                return c_ * dj;
            case Family::const_one: return -inf;
            case Family::list: {
                const double L = neg_log(j);
                if (L == 0.0) return -inf;
                if (std::isinf(L)) return inf;
                return std::log(L);
            }
        }
        return inf;
    }

    LogValue eval(std::uint64_t j) const { return LogValue::from_log(-neg_log(j)); }

    /// Limit of neg_log as j -> inf: +inf iff the sequence decays to zero.
    double infimum_neg_log() const {
        const double inf = std::numeric_limits<double>::infinity();
        switch (family_) {
            case Family::const_one: return 0.0;
            case Family::list:
                if (tail_ == TailRule::geometric && a_ == 1.0) return neg_logs_.back();
                return inf;
            default: return inf;
        }
    }

    bool limit_zero() const { return std::isinf(infimum_neg_log()); }

    /// True iff some entry is strictly below 1.
    bool has_entry_below_one() const {
        switch (family_) {
            case Family::const_one: return false;
            case Family::list: {
                for (double v : values_)
                    if (v < 1.0) return true;
                return tail_ == TailRule::zero || a_ < 1.0;
            }
            default: return true;  // every parametric family decays strictly
        }
    }

    // ---- threshold index -------------------------------------------------

    /// Largest j >= 1 with neg_log(j) < T, i.e. entry_j > e^-T (strict; ties
    /// count as not-greater). 0 when no index qualifies (T <= 0). Throws
    /// range_exceeded past the 2^62 search cap, and never terminates early on
    /// plateaus: callers handle unbounded cases via ln_threshold_index.
    std::uint64_t threshold_index(double T) const {
        if (!(T > 0.0)) return 0;
        if (!(neg_log(1) < T)) return 0;
        std::uint64_t lo = 1, hi = 2;
        while (hi <= kSearchCap && neg_log(hi) < T) {
            lo = hi;
            hi *= 2;
        }
        if (hi > kSearchCap)
            throw range_exceeded("threshold index exceeds 2^62 search cap");
        while (hi - lo > 1) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            if (neg_log(mid) < T)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }

    /// ln of threshold_index(T) as an extended real: -inf when the index is 0,
    /// +inf when every index qualifies (infimum above e^-T), the exact ln of the
    /// searched index when reachable, otherwise the family's closed-form
    /// asymptote (cross-checked against search at construction).
    double ln_threshold_index(double T) const {
        const double inf = std::numeric_limits<double>::infinity();
        if (!(T > 0.0)) return -inf;
        if (infimum_neg_log() < T) return inf;
        const double est = closed_ln_threshold(T);
        if (std::isnan(est) || est < kSearchLogLimit) {
            const std::uint64_t j = threshold_index(T);
            return j == 0 ? -inf : std::log(static_cast<double>(j));
        }
        return est;
    }

    std::string describe() const {
        std::ostringstream out;
        switch (family_) {
            case Family::poly: out << "poly alpha=" << a_; break;
            case Family::geometric: out << "geometric q=" << a_; break;
            case Family::exp_log_pow: out << "explogpow beta=" << b_; break;
            case Family::exp_linear: out << "explinear c=" << c_; break;
            case Family::exp_power: out << "exppower c=" << c_ << " beta=" << b_; break;
            case Family::exp_exp: out << "expexp c=" << c_; break;
            case Family::const_one: out << "constone"; break;
            case Family::list:
                out << "list[" << values_.size() << "] tail=";
                if (tail_ == TailRule::zero)
                    out << "zero";
                else
                    out << "geometric q=" << a_;
                break;
        }
        return out.str();
    }

private:
    SequenceModel(SequenceRole role, Family family) : role_(role), family_(family) {}

    // Search stays exact below e^28 ~ 1.4e12 indices; larger thresholds use the
    // closed form, whose relative index error is negligible at that magnitude.
    static constexpr double kSearchLogLimit = 28.0;

    static void require(bool ok, const char* msg) {
        if (!ok) throw std::invalid_argument(msg);
    }

    static std::string trim(const std::string& s) {
        std::size_t b = 0, e = s.size();
        while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
        return s.substr(b, e - b);
    }

    static double parse_double(const std::string& s, const std::string& what) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw std::invalid_argument(what + ": cannot parse number '" + s + "'");
        }
    }

    /// Asymptotic ln of the threshold index; NaN when the family has none
    /// (bounded lists, constant weights). Used only above kSearchLogLimit.
    double closed_ln_threshold(double T) const {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        switch (family_) {
            case Family::poly: return T / a_;
            case Family::geometric:
                return role_ == SequenceRole::eigenvalues ? std::log1p(T / c_)
                                                          : std::log(T / c_);
            case Family::exp_log_pow: return std::pow(T, 1.0 / b_);
            case Family::exp_linear: return std::log(T / c_);
            case Family::exp_power: return (std::log(T) - std::log(c_)) / b_;
            case Family::exp_exp:
                return T > 1.0 ? std::log(std::max(std::log(T) / c_, 1.0)) : 0.0;
            case Family::const_one: return nan;
            case Family::list:
                if (tail_ == TailRule::zero || std::isinf(neg_logs_.back())) return nan;
                if (a_ == 1.0) return nan;
                return std::log(static_cast<double>(values_.size()) +
                                std::max(0.0, T - neg_logs_.back()) / c_);
        }
        return nan;
    }

    /// Closed form vs exact search at five fixed probes; a wrong inversion in a
    /// family formula fails loudly here rather than skewing diagnostics later.
    void cross_check_closed_form() const {
        static constexpr std::uint64_t wide[] = {7, 29, 111, 1041, 32769};
        static constexpr std::uint64_t narrow[] = {3, 5, 9, 17, 33};
        const bool steep = family_ == Family::exp_exp;
        for (std::uint64_t target : (steep ? narrow : wide)) {
            const double T = neg_log(target + 1);
            if (!std::isfinite(T) || !(T > 0.0)) continue;
            const double est = closed_ln_threshold(T);
            if (std::isnan(est)) continue;
            const std::uint64_t exact = threshold_index(T);
            const double approx = std::exp(est);
            const double lo = 0.45 * static_cast<double>(exact) - 2.0;
            const double hi = 2.2 * static_cast<double>(exact) + 2.0;
            if (!(approx >= lo && approx <= hi))
                throw internal_error("closed-form threshold disagrees with search for " + describe());
        }
    }

    void finish() const { cross_check_closed_form(); }

    SequenceRole role_;
    Family family_;
    double a_ = 0.0;  // alpha / q / tail q
    double b_ = 0.0;  // beta
    double c_ = 0.0;  // rate; for geometric and tails, -ln q
    TailRule tail_ = TailRule::none;
    std::vector<double> values_;
    std::vector<double> neg_logs_;
};

} // namespace wtp
