#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <deque>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wtp/bounds.hpp"
#include "wtp/counting.hpp"
#include "wtp/errors.hpp"
#include "wtp/instance.hpp"
#include "wtp/run_config.hpp"
#include "wtp/tractability.hpp"

namespace wtp {

/// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_g6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

namespace detail {

inline std::string timestamp_line() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string("# generated ") + buf + "\n";
}

/// Writes to the configured file, or stdout when no path is set.
class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) {
        if (path.empty()) {
            out_ = &std::cout;
        } else {
            file_.open(path);
            if (!file_) throw config_error("cannot open output file: " + path);
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }

  private:
    std::ofstream file_;
    std::ostream* out_ = nullptr;
};

inline unsigned resolve_threads(std::uint64_t cfg_threads) {
    if (cfg_threads > 0) return static_cast<unsigned>(cfg_threads);
    if (const char* env = std::getenv("WTP_THREADS")) {
        std::uint64_t v = 0;
        if (!parse_u64(env, v) || v == 0 || v > 4096)
            throw config_error("WTP_THREADS must be a positive integer <= 4096");
        return static_cast<unsigned>(v);
    }
    return 1;
}

/// elapsed_ms is zeroed under no_timestamp so reruns are byte-identical.
inline void write_count_row(std::ostream& os, double eps, std::uint64_t d, const CountResult& r,
                            bool zero_elapsed) {
    const double ms =
        zero_elapsed ? 0.0 : std::chrono::duration<double, std::milli>(r.elapsed).count();
    os << format_g17(eps) << ',' << d << ',' << r.count << ',' << (r.capped ? 1 : 0) << ','
       << r.nodes_visited << ',' << format_g17(ms) << '\n';
}

constexpr const char* kCountHeader = "epsilon,d,count,capped,nodes_visited,elapsed_ms\n";

}  // namespace detail

inline int run_count(const ValidatedRun& v) {
    const RunConfig& cfg = v.cfg;
    detail::OutputTarget out(cfg.output_path);
    std::ostream& os = out.stream();
    if (!cfg.no_timestamp) os << detail::timestamp_line();
    os << detail::kCountHeader;
    const ProblemInstance inst(cfg.d, v.lambdas, v.gammas);
    bool any_capped = false;
    for (double eps : cfg.epsilons) {
        CountResult r = count_exact(inst, eps, cfg.cap);
        any_capped = any_capped || r.capped;
        detail::write_count_row(os, eps, cfg.d, r, cfg.no_timestamp);
    }
    return any_capped ? 3 : 0;
}

/// Cartesian sweep over epsilon (outer) and d (inner), rows in grid order.
/// Hitting the cap is data here, not an error. With more than one worker the
/// jobs run in a bounded window of futures; rows are still written in order
/// and memory stays independent of the grid size.
inline int run_sweep(const ValidatedRun& v) {
    const RunConfig& cfg = v.cfg;
    detail::OutputTarget out(cfg.output_path);
    std::ostream& os = out.stream();
    if (!cfg.no_timestamp) os << detail::timestamp_line();
    os << detail::kCountHeader;
    const std::size_t nd = cfg.d_grid.size();
    const std::size_t total = cfg.epsilons.size() * nd;
    const unsigned workers = detail::resolve_threads(cfg.threads);
    auto run_job = [&v, &cfg, nd](std::size_t idx) {
        const double eps = cfg.epsilons[idx / nd];
        const std::uint64_t d = cfg.d_grid[idx % nd];
        const ProblemInstance inst(d, v.lambdas, v.gammas);
        return count_exact(inst, eps, cfg.cap);
    };
    auto write_row = [&](std::size_t idx, const CountResult& r) {
        detail::write_count_row(os, cfg.epsilons[idx / nd], cfg.d_grid[idx % nd], r,
                                cfg.no_timestamp);
    };
    if (workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) write_row(i, run_job(i));
    } else {
        std::deque<std::future<CountResult>> pending;
        std::size_t next = 0, done = 0;
        while (done < total) {
            while (pending.size() < workers && next < total)
                pending.push_back(std::async(std::launch::async, run_job, next++));
            write_row(done++, pending.front().get());
            pending.pop_front();
        }
    }
    return 0;
}

inline int run_bounds(const ValidatedRun& v) {
    const RunConfig& cfg = v.cfg;
    detail::OutputTarget out(cfg.output_path);
    std::ostream& os = out.stream();
    if (!cfg.no_timestamp) os << detail::timestamp_line();
    os << "epsilon,d,ln_count,ln_dimension_bound,ln_product_bound,"
          "block_index,ln_block_power_bound,ln_block_sum_bound\n";
    const ProblemInstance inst(cfg.d, v.lambdas, v.gammas);
    for (double eps : cfg.epsilons) {
        BoundReport rep = bound_report(inst, eps, cfg.with_exact, cfg.cap);
        std::string ln_count;  // left empty when not computed or capped
        if (rep.exact && !rep.exact->capped)
            ln_count = format_g17(std::log(static_cast<double>(rep.exact->count)));
        for (const BlockBoundRow& row : rep.blocks) {
            os << format_g17(eps) << ',' << cfg.d << ',' << ln_count << ','
               << format_g17(rep.power.ln_bound) << ',' << format_g17(rep.ln_product_bound)
               << ',' << row.block_index << ',' << format_g17(row.ln_power_bound) << ','
               << format_g17(row.ln_sum_bound) << '\n';
        }
    }
    return 0;
}

inline int run_thresholds(const ValidatedRun& v) {
    const RunConfig& cfg = v.cfg;
    detail::OutputTarget out(cfg.output_path);
    std::ostream& os = out.stream();
    if (!cfg.no_timestamp) os << detail::timestamp_line();
    os << "epsilon,j_eps,d_eps\n";
    for (double eps : cfg.epsilons) {
        const std::uint64_t j = j_of_epsilon(v.lambdas, eps);
        const DimCount dc = d_of_epsilon(v.gammas, eps);
        os << format_g17(eps) << ',' << j << ',';
        if (dc.infinite)
            os << "inf";
        else
            os << dc.value;
        os << '\n';
    }
    return 0;
}

namespace detail {

inline nlohmann::json diagnostic_to_json(const LimitDiagnostic& d) {
    nlohmann::json jd;
    jd["name"] = d.name;
    jd["trend"] = trend_name(d.trend);
    jd["trend_slope"] = d.trend_slope;
    jd["gap_count"] = d.gap_count;
    nlohmann::json samples = nlohmann::json::array();
    for (const DiagnosticSample& s : d.samples) {
        nlohmann::json js;
        js["probe"] = s.probe;
        js["value"] = s.gap ? nlohmann::json(nullptr) : nlohmann::json(s.value);
        js["gap"] = s.gap;
        samples.push_back(std::move(js));
    }
    jd["samples"] = std::move(samples);
    return jd;
}

inline void write_classify_text(std::ostream& os, const ValidatedRun& v,
                                const ClassificationReport& rep) {
    const RunConfig& cfg = v.cfg;
    os << "# lambdas: " << v.lambdas.describe() << "\n";
    os << "# gammas: " << v.gammas.describe() << "\n";
    os << "# params: s=" << format_g6(cfg.s) << " t=" << format_g6(cfg.t)
       << " delta=" << format_g6(cfg.delta) << " s_gt1=" << format_g6(cfg.s_gt1)
       << " t_gt1=" << format_g6(cfg.t_gt1) << "\n";
    for (const CriterionResult& e : rep.entries) {
        os << e.notion << ',' << verdict_name(e.verdict) << '\n';
        os << "  certifying: " << (e.certifying ? "yes" : "no") << '\n';
        os << "  criterion: " << e.criterion << '\n';
        if (e.exponent_estimate)
            os << "  exponent_estimate: " << format_g17(*e.exponent_estimate) << '\n';
        if (!e.note.empty()) os << "  note: " << e.note << '\n';
        for (const LimitDiagnostic& d : e.diagnostics) {
            os << "  diagnostic: " << d.name << " | trend=" << trend_name(d.trend)
               << " slope=" << format_g6(d.trend_slope) << " gaps=" << d.gap_count << " tail:";
            std::vector<double> tail;
            for (auto it = d.samples.rbegin(); it != d.samples.rend() && tail.size() < 3; ++it)
                if (!it->gap) tail.push_back(it->value);
            for (auto it = tail.rbegin(); it != tail.rend(); ++it) os << ' ' << format_g6(*it);
            if (tail.empty()) os << " (all gaps)";
            os << '\n';
        }
    }
    os << "# checked implications:";
    if (rep.checked_implications.empty()) os << " (none)";
    for (const std::string& s : rep.checked_implications) os << " [" << s << "]";
    os << "\n";
}

}  // namespace detail

/// Human-readable report to stdout (one `<notion>,<verdict>` line per entry)
/// plus the full machine-readable report as JSON at the configured path.
inline int run_classify(const ValidatedRun& v) {
    const RunConfig& cfg = v.cfg;
    ClassifyParams ps;
    ps.s = cfg.s;
    ps.t = cfg.t;
    ps.delta = cfg.delta;
    ps.s_gt1 = cfg.s_gt1;
    ps.t_gt1 = cfg.t_gt1;
    ps.thresholds = cfg.thresholds;
    const ClassificationReport rep = classify(v.lambdas, v.gammas, ps);

    detail::write_classify_text(std::cout, v, rep);

    nlohmann::json doc;
    doc["lambdas"] = v.lambdas.describe();
    doc["gammas"] = v.gammas.describe();
    doc["params"] = {{"s", cfg.s},
                     {"t", cfg.t},
                     {"delta", cfg.delta},
                     {"s_gt1", cfg.s_gt1},
                     {"t_gt1", cfg.t_gt1}};
    doc["thresholds"] = {{"diverge", cfg.thresholds.diverge},
                         {"vanish", cfg.thresholds.vanish},
                         {"mono_slack", cfg.thresholds.mono_slack},
                         {"net_change", cfg.thresholds.net_change},
                         {"max_gap_fraction", cfg.thresholds.max_gap_fraction},
                         {"min_probes", cfg.thresholds.min_probes}};
    nlohmann::json entries = nlohmann::json::array();
    for (const CriterionResult& e : rep.entries) {
        nlohmann::json je;
        je["notion"] = e.notion;
        je["criterion"] = e.criterion;
        je["verdict"] = verdict_name(e.verdict);
        je["certifying"] = e.certifying;
        je["exponent_estimate"] =
            e.exponent_estimate ? nlohmann::json(*e.exponent_estimate) : nlohmann::json(nullptr);
        je["note"] = e.note;
        nlohmann::json diags = nlohmann::json::array();
        for (const LimitDiagnostic& d : e.diagnostics)
            diags.push_back(detail::diagnostic_to_json(d));
        je["diagnostics"] = std::move(diags);
        entries.push_back(std::move(je));
    }
    doc["entries"] = std::move(entries);
    doc["checked_implications"] = rep.checked_implications;

    std::ofstream jf(cfg.output_path);
    if (!jf) throw config_error("cannot open output file: " + cfg.output_path);
    jf << doc.dump(2) << "\n";
    return 0;
}

/// Validates the config, then dispatches. Exit: 0 done, 3 a count row hit the
/// cap when exactness was requested. Everything else surfaces as an exception.
inline int run(const RunConfig& raw) {
    ValidatedRun v = validate_config(raw);
    switch (v.cfg.command) {
        case Command::count: return run_count(v);
        case Command::bounds: return run_bounds(v);
        case Command::classify: return run_classify(v);
        case Command::sweep: return run_sweep(v);
        case Command::thresholds: return run_thresholds(v);
    }
    throw internal_error("unhandled command");
}

/// Exit codes: 0 done;  1 bad config or arguments;  2 a sequence search ran
/// past its supported range;  3 a count hit the cap under `count`;
/// 4 an internal invariant failed.
inline int run_cli(int argc, char** argv) {
    CLI::App app{"weighted tensor-product count, bound and tractability toolkit"};
    std::string config_path;
    std::string output_override;
    std::uint64_t cap_override = 0;
    std::uint64_t threads_override = 0;
    bool no_ts = false;
    app.add_option("--config,-c", config_path, "run configuration file (INI)")->required();
    app.add_option("--output,-o", output_override, "override [output] path");
    app.add_option("--cap", cap_override, "override [output] cap");
    app.add_option("--threads", threads_override, "override [output] threads");
    app.add_flag("--no-timestamp", no_ts,
                 "omit the generated-at header and zero elapsed_ms columns");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    try {
        RunConfig cfg = parse_config_file(config_path);
        if (app.count("--output")) cfg.output_path = output_override;
        if (app.count("--cap")) cfg.cap = cap_override;
        if (app.count("--threads")) cfg.threads = threads_override;
        if (no_ts) cfg.no_timestamp = true;
        return run(cfg);
    } catch (const range_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace wtp
