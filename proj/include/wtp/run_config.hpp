#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wtp/counting.hpp"
#include "wtp/errors.hpp"
#include "wtp/limit_diagnostic.hpp"
#include "wtp/sequence_model.hpp"

namespace wtp {

enum class Command { count, bounds, classify, sweep, thresholds };

inline const char* command_name(Command c) {
    switch (c) {
        case Command::count: return "count";
        case Command::bounds: return "bounds";
        case Command::classify: return "classify";
        case Command::sweep: return "sweep";
        case Command::thresholds: return "thresholds";
    }
    return "?";
}

/// One run of the tool: a command plus everything it needs. Produced by the
/// config parser, then checked as a whole by validate_config so a broken file
/// reports every problem at once instead of the first one.
struct RunConfig {
    Command command = Command::count;
    std::string lambdas_spec;
    std::string gammas_spec;
    std::uint64_t d = 1;
    std::vector<double> epsilons;
    std::vector<std::uint64_t> d_grid;
    double s = 0.5;
    double t = 0.5;
    double delta = 0.5;
    double s_gt1 = 2.0;
    double t_gt1 = 2.0;
    std::uint64_t cap = kDefaultCountCap;
    bool with_exact = false;
    std::string output_path;
    bool no_timestamp = false;
    std::uint64_t threads = 0;  ///< 0: take WTP_THREADS from the environment, else 1
    DiagnosticThresholds thresholds{};
};

namespace detail {

inline std::string trim_ws(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

/// Split on spaces, tabs and commas; empty tokens dropped.
inline std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == ',') {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

inline bool parse_f64(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

inline bool parse_u64(const std::string& s, std::uint64_t& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

inline bool parse_bool(const std::string& s, bool& out) {
    if (s == "true" || s == "1") return out = true, true;
    if (s == "false" || s == "0") return out = false, true;
    return false;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

constexpr std::size_t kMaxGridPoints = 10'000'000;

}  // namespace detail

/// Parse INI-style config text. Sections: [instance], [grids], [thresholds],
/// [output]; the `command` key lives outside any section. Full-line comments
/// start with '#' or ';'. Grid keys accept either explicit lists (space or
/// comma separated) or generators: `epsilon_grid = geometric <lo> <hi> <n>`
/// (log-spaced, endpoints included) and `d_grid = range <lo> <hi>`.
/// Every syntax problem is collected; one config_error reports them all.
inline RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::vector<std::string> errors;
    std::set<std::string> seen;
    std::string section;
    bool skip_section = false;
    bool have_command = false, have_eps = false, have_eps_grid = false;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    auto err = [&](const std::string& m) {
        errors.push_back("line " + std::to_string(lineno) + ": " + m);
    };
    auto want_f64 = [&](const std::string& key, const std::string& v, double& out) {
        if (!detail::parse_f64(v, out)) err(key + ": not a number: " + v);
    };
    auto want_u64 = [&](const std::string& key, const std::string& v, std::uint64_t& out) {
        if (!detail::parse_u64(v, out)) err(key + ": not a nonnegative integer: " + v);
    };
    auto want_bool = [&](const std::string& key, const std::string& v, bool& out) {
        if (!detail::parse_bool(v, out)) err(key + ": expected true/false: " + v);
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim_ws(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                err("malformed section header: " + t);
                skip_section = true;
                continue;
            }
            section = detail::trim_ws(t.substr(1, t.size() - 2));
            skip_section = section != "instance" && section != "grids" &&
                           section != "thresholds" && section != "output";
            if (skip_section) err("unknown section [" + section + "]");
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            err("expected key = value: " + t);
            continue;
        }
        std::string key = detail::trim_ws(t.substr(0, eq));
        std::string value = detail::trim_ws(t.substr(eq + 1));
        if (key.empty()) {
            err("empty key");
            continue;
        }
        if (skip_section) continue;
        if (!seen.insert(section + "." + key).second) {
            err("duplicate key: " + key);
            continue;
        }
        if (value.empty()) {
            err(key + ": empty value");
            continue;
        }

        if (section.empty()) {
            if (key == "command") {
                have_command = true;
                if (value == "count") cfg.command = Command::count;
                else if (value == "bounds") cfg.command = Command::bounds;
                else if (value == "classify") cfg.command = Command::classify;
                else if (value == "sweep") cfg.command = Command::sweep;
                else if (value == "thresholds") cfg.command = Command::thresholds;
                else err("unknown command: " + value);
            } else {
                err("key outside a section: " + key);
            }
        } else if (section == "instance") {
            if (key == "lambdas") cfg.lambdas_spec = value;
            else if (key == "gammas") cfg.gammas_spec = value;
            else if (key == "d") want_u64(key, value, cfg.d);
            else err("unknown key in [instance]: " + key);
        } else if (section == "grids") {
            if (key == "epsilon") {
                have_eps = true;
                double v = 0;
                want_f64(key, value, v);
                cfg.epsilons = {v};
            } else if (key == "epsilon_grid") {
                have_eps_grid = true;
                auto toks = detail::split_tokens(value);
                if (!toks.empty() && toks[0] == "geometric") {
                    double lo = 0, hi = 0;
                    std::uint64_t n = 0;
                    if (toks.size() != 4) {
                        err("epsilon_grid: geometric form needs <lo> <hi> <n>");
                    } else {
                        want_f64(key, toks[1], lo);
                        want_f64(key, toks[2], hi);
                        want_u64(key, toks[3], n);
                        if (!(lo > 0) || !(hi > 0) || !std::isfinite(lo) || !std::isfinite(hi))
                            err("epsilon_grid: geometric endpoints must be finite and positive");
                        else if (n < 2 || n > detail::kMaxGridPoints)
                            err("epsilon_grid: geometric point count must be in [2, 1e7]");
                        else {
                            const double la = std::log(lo), lb = std::log(hi);
                            cfg.epsilons.clear();
                            for (std::uint64_t i = 0; i < n; ++i)
                                cfg.epsilons.push_back(std::exp(
                                    la + (lb - la) * static_cast<double>(i) /
                                             static_cast<double>(n - 1)));
                        }
                    }
                } else {
                    cfg.epsilons.clear();
                    for (const auto& tok : toks) {
                        double v = 0;
                        want_f64(key, tok, v);
                        cfg.epsilons.push_back(v);
                    }
                }
            } else if (key == "d_grid") {
                auto toks = detail::split_tokens(value);
                if (!toks.empty() && toks[0] == "range") {
                    std::uint64_t lo = 0, hi = 0;
                    if (toks.size() != 3) {
                        err("d_grid: range form needs <lo> <hi>");
                    } else {
                        want_u64(key, toks[1], lo);
                        want_u64(key, toks[2], hi);
                        if (lo < 1 || hi < lo)
                            err("d_grid: range needs 1 <= lo <= hi");
                        else if (hi - lo + 1 > detail::kMaxGridPoints)
                            err("d_grid: range has more than 1e7 points");
                        else {
                            cfg.d_grid.clear();
                            for (std::uint64_t v = lo; v <= hi; ++v) cfg.d_grid.push_back(v);
                        }
                    }
                } else {
                    cfg.d_grid.clear();
                    for (const auto& tok : toks) {
                        std::uint64_t v = 0;
                        want_u64(key, tok, v);
                        cfg.d_grid.push_back(v);
                    }
                }
            } else if (key == "s") want_f64(key, value, cfg.s);
            else if (key == "t") want_f64(key, value, cfg.t);
            else if (key == "delta") want_f64(key, value, cfg.delta);
            else if (key == "s_gt1") want_f64(key, value, cfg.s_gt1);
            else if (key == "t_gt1") want_f64(key, value, cfg.t_gt1);
            else err("unknown key in [grids]: " + key);
        } else if (section == "thresholds") {
            if (key == "diverge") want_f64(key, value, cfg.thresholds.diverge);
            else if (key == "vanish") want_f64(key, value, cfg.thresholds.vanish);
            else if (key == "mono_slack") want_f64(key, value, cfg.thresholds.mono_slack);
            else if (key == "net_change") want_f64(key, value, cfg.thresholds.net_change);
            else if (key == "max_gap_fraction")
                want_f64(key, value, cfg.thresholds.max_gap_fraction);
            else if (key == "min_probes") {
                std::uint64_t v = 0;
                want_u64(key, value, v);
                cfg.thresholds.min_probes = static_cast<std::size_t>(v);
            } else err("unknown key in [thresholds]: " + key);
        } else if (section == "output") {
            if (key == "path") cfg.output_path = value;
            else if (key == "cap") want_u64(key, value, cfg.cap);
            else if (key == "no_timestamp") want_bool(key, value, cfg.no_timestamp);
            else if (key == "with_exact") want_bool(key, value, cfg.with_exact);
            else if (key == "threads") want_u64(key, value, cfg.threads);
            else err("unknown key in [output]: " + key);
        }
    }

    if (!have_command) errors.push_back("missing required key: command");
    if (have_eps && have_eps_grid)
        errors.push_back("[grids]: set either epsilon or epsilon_grid, not both");
    if (!errors.empty()) throw config_error(detail::join(errors, "; "));
    return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

/// A config whose models parsed and whose fields passed every semantic check.
struct ValidatedRun {
    RunConfig cfg;
    SequenceModel lambdas;
    SequenceModel gammas;
};

/// Semantic validation: builds both sequence models and checks every field the
/// selected command needs. All violations are aggregated into one config_error
/// before any computation starts.
inline ValidatedRun validate_config(RunConfig cfg) {
    std::vector<std::string> errors;
    std::optional<SequenceModel> lam, gam;

    if (cfg.lambdas_spec.empty()) {
        errors.push_back("instance.lambdas is required");
    } else {
        try {
            lam = SequenceModel::parse(SequenceRole::eigenvalues, cfg.lambdas_spec);
        } catch (const std::exception& e) {
            errors.push_back(std::string("instance.lambdas: ") + e.what());
        }
    }
    if (cfg.gammas_spec.empty()) {
        errors.push_back("instance.gammas is required");
    } else {
        try {
            gam = SequenceModel::parse(SequenceRole::weights, cfg.gammas_spec);
        } catch (const std::exception& e) {
            errors.push_back(std::string("instance.gammas: ") + e.what());
        }
    }

    const bool needs_eps = cfg.command != Command::classify;
    if (needs_eps && cfg.epsilons.empty())
        errors.push_back(std::string(command_name(cfg.command)) +
                         " needs [grids] epsilon or epsilon_grid");
    for (double e : cfg.epsilons) {
        if (!std::isfinite(e) || e <= 0) {
            errors.push_back("epsilon values must be finite and positive");
            break;
        }
    }
    if (cfg.command == Command::bounds) {
        for (double e : cfg.epsilons) {
            if (e >= 1) {
                errors.push_back("bounds needs every epsilon < 1");
                break;
            }
        }
        if (cfg.d < 8)
            errors.push_back("bounds needs instance.d >= 8 (use count for smaller d)");
    }
    if ((cfg.command == Command::count || cfg.command == Command::bounds) && cfg.d < 1)
        errors.push_back("instance.d must be >= 1");
    if (cfg.command == Command::sweep) {
        if (cfg.d_grid.empty()) errors.push_back("sweep needs [grids] d_grid");
        for (std::uint64_t d : cfg.d_grid) {
            if (d < 1) {
                errors.push_back("d_grid entries must be >= 1");
                break;
            }
        }
    }
    if (cfg.command == Command::classify && cfg.output_path.empty())
        errors.push_back("classify needs [output] path for the machine-readable report");

    if (cfg.cap < 1) errors.push_back("output.cap must be >= 1");
    if (cfg.threads > 4096) errors.push_back("output.threads must be <= 4096");

    if (!(cfg.s > 0 && cfg.s < 1)) errors.push_back("grids.s must be in (0,1)");
    if (!(cfg.t > 0 && cfg.t <= 1)) errors.push_back("grids.t must be in (0,1]");
    if (!(cfg.delta > 0) || !std::isfinite(cfg.delta))
        errors.push_back("grids.delta must be finite and positive");
    if (!(cfg.s_gt1 > 1) || !std::isfinite(cfg.s_gt1))
        errors.push_back("grids.s_gt1 must be finite and > 1");
    if (!(cfg.t_gt1 > 1) || !std::isfinite(cfg.t_gt1))
        errors.push_back("grids.t_gt1 must be finite and > 1");

    const DiagnosticThresholds& th = cfg.thresholds;
    if (!(th.diverge > 0) || !std::isfinite(th.diverge))
        errors.push_back("thresholds.diverge must be finite and positive");
    if (!(th.vanish > 0) || !std::isfinite(th.vanish))
        errors.push_back("thresholds.vanish must be finite and positive");
    if (th.diverge > 0 && th.vanish > 0 && !(th.vanish < th.diverge))
        errors.push_back("thresholds.vanish must be below thresholds.diverge");
    if (!(th.mono_slack >= 0 && th.mono_slack < 1))
        errors.push_back("thresholds.mono_slack must be in [0,1)");
    if (!(th.net_change > 0 && th.net_change <= 1))
        errors.push_back("thresholds.net_change must be in (0,1]");
    if (!(th.max_gap_fraction >= 0 && th.max_gap_fraction <= 1))
        errors.push_back("thresholds.max_gap_fraction must be in [0,1]");
    if (th.min_probes < 3) errors.push_back("thresholds.min_probes must be >= 3");

    if (!errors.empty()) throw config_error(detail::join(errors, "; "));
    return ValidatedRun{std::move(cfg), std::move(*lam), std::move(*gam)};
}

}  // namespace wtp
