#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <wtp/tractability.hpp>

using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

wtp::SequenceModel lam(const std::string& spec) {
    return wtp::SequenceModel::parse(wtp::SequenceRole::eigenvalues, spec);
}

wtp::SequenceModel gam(const std::string& spec) {
    return wtp::SequenceModel::parse(wtp::SequenceRole::weights, spec);
}

wtp::SequenceModel zero_tail_lambda() {
    return wtp::SequenceModel::from_values(wtp::SequenceRole::eigenvalues, {1.0, 0.5, 0.25},
                                           wtp::TailRule::zero);
}

wtp::SequenceModel unit_second_lambda() {
    return wtp::SequenceModel::from_values(wtp::SequenceRole::eigenvalues, {1.0, 1.0, 0.5},
                                           wtp::TailRule::geometric, 0.5);
}

std::vector<wtp::Verdict> verdicts(const wtp::ClassificationReport& rep) {
    std::vector<wtp::Verdict> v;
    for (const auto& e : rep.entries) v.push_back(e.verdict);
    return v;
}

} // namespace

TEST_CASE("limit diagnostic classifies canonical trends", "[tract]") {
    const auto grid = wtp::epsilon_log_probe_grid();

    SECTION("constant quotient is bounded_positive with zero slope") {
        const auto d = wtp::run_limit_diagnostic("const", [](double) { return 2.0; }, grid);
        CHECK(d.trend == wtp::Trend::bounded_positive);
        CHECK(d.trend_slope == Approx(0.0).margin(1e-12));
        CHECK(d.gap_count == 0);
        CHECK(d.samples.size() == 14);
        CHECK(d.tail_start == 9);
    }

    SECTION("slow logarithmic growth diverges via net tail change") {
        const auto d = wtp::run_limit_diagnostic("log", [](double p) { return std::log(p); }, grid);
        CHECK(d.trend == wtp::Trend::diverges);
    }

    SECTION("slow logarithmic decay vanishes via net tail change") {
        const auto d =
            wtp::run_limit_diagnostic("1/log", [](double p) { return 1.0 / std::log(p); }, grid);
        CHECK(d.trend == wtp::Trend::vanishes);
    }

    SECTION("tail slope is the log-log least-squares slope") {
        const auto d = wtp::run_limit_diagnostic("p^2", [](double p) { return p * p; }, grid);
        CHECK(d.trend == wtp::Trend::diverges);
        CHECK(d.trend_slope == Approx(2.0));
    }

    SECTION("overflow clamps to the value ceiling and still diverges") {
        const auto d = wtp::run_limit_diagnostic("exp", [](double p) { return std::exp(p); }, grid);
        CHECK(d.trend == wtp::Trend::diverges);
        CHECK_FALSE(d.samples.back().gap);
        CHECK(d.samples.back().value == 1e300);
    }

    SECTION("negative values floor at zero and read as vanishing") {
        const auto d = wtp::run_limit_diagnostic("neg", [](double) { return -5.0; }, grid);
        CHECK(d.trend == wtp::Trend::vanishes);
        for (const auto& s : d.samples) {
            CHECK_FALSE(s.gap);
            CHECK(s.value == 0.0);
        }
    }

    SECTION("custom clamp ceiling caps the stored values") {
        wtp::DiagnosticThresholds thr;
        thr.value_clamp = 50.0;
        const auto d = wtp::run_limit_diagnostic("capped", [](double p) { return p; }, grid, thr);
        CHECK(d.samples.back().value == 50.0);
        CHECK(d.trend == wtp::Trend::bounded_positive);
    }

    SECTION("NaN results are gaps; too many gaps is inconclusive") {
        const auto d = wtp::run_limit_diagnostic(
            "gappy",
            [](double p) { return p < 64.0 ? std::numeric_limits<double>::quiet_NaN() : 1.0; }, grid);
        CHECK(d.gap_count == 5);
        CHECK(d.trend == wtp::Trend::inconclusive);
    }

    SECTION("throwing probes are gaps") {
        const auto d = wtp::run_limit_diagnostic(
            "thrower",
            [](double p) -> double {
                if (p > 100.0) throw std::runtime_error("no value");
                return 1.0;
            },
            grid);
        CHECK(d.gap_count == 8);
        CHECK(d.trend == wtp::Trend::inconclusive);
        CHECK(d.samples.back().gap);
    }

    SECTION("fewer usable probes than the minimum is inconclusive") {
        const std::vector<double> few = {2, 4, 8, 16, 32, 64};
        const auto d = wtp::run_limit_diagnostic("few", [](double) { return 1.0; }, few);
        CHECK(d.trend == wtp::Trend::inconclusive);
    }

    SECTION("a tail shorter than three samples is inconclusive") {
        wtp::DiagnosticThresholds thr;
        thr.min_probes = 2;
        const std::vector<double> four = {2, 4, 8, 16};
        const auto d = wtp::run_limit_diagnostic("short", [](double) { return 1.0; }, four, thr);
        CHECK(d.trend == wtp::Trend::inconclusive);
    }

    SECTION("empty probe list is inconclusive") {
        const auto d = wtp::run_limit_diagnostic("empty", [](double) { return 1.0; }, {});
        CHECK(d.trend == wtp::Trend::inconclusive);
        CHECK(d.samples.empty());
    }

    SECTION("an oscillating out-of-band tail is inconclusive") {
        const auto d = wtp::run_limit_diagnostic(
            "zigzag",
            [](double p) { return std::fmod(std::log2(p), 2.0) == 0.0 ? 1e4 : 1.0; }, grid);
        CHECK(d.trend == wtp::Trend::inconclusive);
    }

    SECTION("diagnostics are deterministic") {
        const auto a = wtp::run_limit_diagnostic("det", [](double p) { return std::log(p); }, grid);
        const auto b = wtp::run_limit_diagnostic("det", [](double p) { return std::log(p); }, grid);
        REQUIRE(a.samples.size() == b.samples.size());
        for (std::size_t i = 0; i < a.samples.size(); ++i)
            CHECK(a.samples[i].value == b.samples[i].value);
        CHECK(a.trend == b.trend);
        CHECK(a.trend_slope == b.trend_slope);
    }
}

TEST_CASE("probe grids are fixed doubling ladders", "[tract]") {
    const auto eps = wtp::epsilon_log_probe_grid();
    REQUIRE(eps.size() == 14);
    CHECK(eps.front() == 2.0);
    CHECK(eps.back() == 16384.0);

    const auto idx = wtp::index_probe_grid();
    REQUIRE(idx.size() == 40);
    CHECK(idx.front() == 2.0);
    CHECK(idx.back() == 1099511627776.0);
    for (std::size_t i = 1; i < idx.size(); ++i) CHECK(idx[i] == 2.0 * idx[i - 1]);
}

TEST_CASE("verdict algebra maps trends to verdicts", "[tract]") {
    using wtp::Trend;
    using wtp::Verdict;

    CHECK(wtp::verdict_requires_vanishing(Trend::vanishes) == Verdict::holds);
    CHECK(wtp::verdict_requires_vanishing(Trend::diverges) == Verdict::fails);
    CHECK(wtp::verdict_requires_vanishing(Trend::bounded_positive) == Verdict::fails);
    CHECK(wtp::verdict_requires_vanishing(Trend::inconclusive) == Verdict::inconclusive);

    CHECK(wtp::verdict_requires_divergence(Trend::diverges) == Verdict::holds);
    CHECK(wtp::verdict_requires_divergence(Trend::vanishes) == Verdict::fails);
    CHECK(wtp::verdict_requires_divergence(Trend::bounded_positive) == Verdict::fails);
    CHECK(wtp::verdict_requires_divergence(Trend::inconclusive) == Verdict::inconclusive);

    CHECK(wtp::verdict_requires_bounded(Trend::vanishes) == Verdict::holds);
    CHECK(wtp::verdict_requires_bounded(Trend::bounded_positive) == Verdict::holds);
    CHECK(wtp::verdict_requires_bounded(Trend::diverges) == Verdict::fails);
    CHECK(wtp::verdict_requires_bounded(Trend::inconclusive) == Verdict::inconclusive);

    CHECK(wtp::verdict_and(Verdict::holds, Verdict::holds) == Verdict::holds);
    CHECK(wtp::verdict_and(Verdict::holds, Verdict::fails) == Verdict::fails);
    CHECK(wtp::verdict_and(Verdict::fails, Verdict::inconclusive) == Verdict::fails);
    CHECK(wtp::verdict_and(Verdict::holds, Verdict::inconclusive) == Verdict::inconclusive);
    CHECK(wtp::verdict_and(Verdict::inconclusive, Verdict::inconclusive) == Verdict::inconclusive);
}

TEST_CASE("strong and plain single-problem criteria", "[tract]") {
    SECTION("fast decay on both sides keeps the dimension-threshold product bounded") {
        const auto r =
            wtp::criterion_catalog(zero_tail_lambda(), gam("expexp c=1"), wtp::CatalogNotion::spt, 1, 1);
        CHECK(r.notion == "EXP-SPT");
        CHECK(r.verdict == wtp::Verdict::holds);
        CHECK(r.certifying);
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].name == "d(eps) * ln j(eps) / lnln(1/eps)");
        CHECK(r.diagnostics[0].trend == wtp::Trend::bounded_positive);
        REQUIRE(r.exponent_estimate.has_value());
        CHECK(*r.exponent_estimate == Approx(1.18872187554));
        CHECK(r.note == "exponent_estimate is a finite-grid tail max, a lower estimate of the limsup");
    }

    SECTION("geometric pairs push the quotient to infinity") {
        const auto r =
            wtp::criterion_catalog(lam("geometric q=0.5"), gam("geometric q=0.5"), wtp::CatalogNotion::spt, 1, 1);
        CHECK(r.verdict == wtp::Verdict::fails);
        CHECK(r.diagnostics[0].trend == wtp::Trend::diverges);
    }

    SECTION("non-decaying weights fail with an explanatory note") {
        const auto r =
            wtp::criterion_catalog(lam("geometric q=0.5"), gam("constone"), wtp::CatalogNotion::spt, 1, 1);
        CHECK(r.verdict == wtp::Verdict::fails);
        CHECK(r.note == "weights do not decay to zero");
        CHECK(r.exponent_estimate.has_value());
    }

    SECTION("the plain notion evaluates identically and says so") {
        const auto r =
            wtp::criterion_catalog(zero_tail_lambda(), gam("expexp c=1"), wtp::CatalogNotion::pt, 1, 1);
        CHECK(r.notion == "EXP-PT");
        CHECK(r.verdict == wtp::Verdict::holds);
        CHECK_THAT(r.note, ContainsSubstring("EXP-PT is characterized identically to EXP-SPT"));
    }
}

TEST_CASE("quasi and weak single-problem criteria", "[tract]") {
    SECTION("log-dimension scaling holds for fast decay; first probe gaps on d(eps) < 2") {
        const auto r =
            wtp::criterion_catalog(zero_tail_lambda(), gam("expexp c=1"), wtp::CatalogNotion::qpt, 1, 1);
        CHECK(r.notion == "EXP-QPT");
        CHECK(r.verdict == wtp::Verdict::holds);
        CHECK(r.diagnostics[0].name == "d(eps) * ln j(eps) / (ln d(eps) * lnln(1/eps))");
        CHECK(r.diagnostics[0].trend == wtp::Trend::vanishes);
        CHECK(r.diagnostics[0].gap_count == 1);
        CHECK(r.diagnostics[0].samples[0].gap);
        REQUIRE(r.exponent_estimate.has_value());
        CHECK(*r.exponent_estimate == Approx(0.570156721287));
    }

    SECTION("geometric pairs fail the quasi notion") {
        const auto r = wtp::criterion_catalog(lam("geometric q=0.5"), gam("geometric q=0.5"),
                                              wtp::CatalogNotion::qpt, 1, 1);
        CHECK(r.verdict == wtp::Verdict::fails);
    }

    SECTION("weak notion needs decaying weights and super-polynomial eigen decay") {
        const auto hold = wtp::criterion_catalog(lam("explinear c=1"), gam("geometric q=0.5"),
                                                 wtp::CatalogNotion::wt, 1, 1);
        CHECK(hold.notion == "EXP-WT");
        CHECK(hold.verdict == wtp::Verdict::holds);

        const auto poly = wtp::criterion_catalog(lam("poly alpha=2"), gam("geometric q=0.5"),
                                                 wtp::CatalogNotion::wt, 1, 1);
        CHECK(poly.verdict == wtp::Verdict::fails);
        CHECK(poly.diagnostics[0].trend == wtp::Trend::bounded_positive);

        const auto flat = wtp::criterion_catalog(lam("geometric q=0.5"), gam("constone"),
                                                 wtp::CatalogNotion::wt, 1, 1);
        CHECK(flat.verdict == wtp::Verdict::fails);
        CHECK(flat.diagnostics[0].trend == wtp::Trend::diverges);
        CHECK(flat.note == "weights do not decay to zero");
    }
}

TEST_CASE("parametric catalog regimes", "[tract]") {
    SECTION("s=1, t<1 needs both log-ratios to diverge") {
        const auto hold = wtp::criterion_catalog(lam("geometric q=0.5"), gam("expexp c=1"),
                                                 wtp::CatalogNotion::s1_t_below1, 1.0, 0.5);
        CHECK(hold.notion == "EXP-(1,t)-WT t<1");
        CHECK(hold.verdict == wtp::Verdict::holds);
        CHECK(hold.note == "condition is t-independent within 0<t<1");
        REQUIRE(hold.diagnostics.size() == 2);
        CHECK(hold.diagnostics[0].name == "ln(1/gamma_j) / ln j");

        const auto fail = wtp::criterion_catalog(lam("poly alpha=2"), gam("poly alpha=1"),
                                                 wtp::CatalogNotion::s1_t_below1, 1.0, 0.5);
        CHECK(fail.verdict == wtp::Verdict::fails);
        CHECK(fail.diagnostics[0].trend == wtp::Trend::bounded_positive);
        CHECK(fail.diagnostics[1].trend == wtp::Trend::bounded_positive);

        CHECK_THROWS_WITH(wtp::criterion_catalog(lam("poly alpha=2"), gam("poly alpha=1"),
                                                 wtp::CatalogNotion::s1_t_below1, 1.0, 1.0),
                          "catalog regime s=1, t<1 needs t in (0,1)");
    }

    SECTION("s=1, t>1 frees the weights") {
        const auto hold = wtp::criterion_catalog(lam("explinear c=1"), gam("constone"),
                                                 wtp::CatalogNotion::s1_t_above1, 1.0, 2.0);
        CHECK(hold.notion == "EXP-(1,t)-WT t>1");
        CHECK(hold.verdict == wtp::Verdict::holds);
        CHECK_THAT(hold.criterion, ContainsSubstring("weights arbitrary"));

        const auto fail = wtp::criterion_catalog(lam("poly alpha=2"), gam("constone"),
                                                 wtp::CatalogNotion::s1_t_above1, 1.0, 2.0);
        CHECK(fail.verdict == wtp::Verdict::fails);

        CHECK_THROWS_WITH(wtp::criterion_catalog(lam("poly alpha=2"), gam("constone"),
                                                 wtp::CatalogNotion::s1_t_above1, 1.0, 1.0),
                          "catalog regime s=1, t>1 needs t > 1");
    }

    SECTION("s>1, t<=1 auto-branches on the second eigenvalue") {
        const auto below = wtp::criterion_catalog(lam("poly alpha=2"), gam("geometric q=0.5"),
                                                  wtp::CatalogNotion::s_above1_t_at_most1, 2.0, 0.5);
        CHECK(below.notion == "EXP-(s,t)-WT s>1 t<=1");
        CHECK(below.verdict == wtp::Verdict::holds);
        CHECK(below.note == "second eigenvalue is below 1");

        const auto unit_ok = wtp::criterion_catalog(unit_second_lambda(), gam("geometric q=0.5"),
                                                    wtp::CatalogNotion::s_above1_t_at_most1, 2.0, 0.5);
        CHECK(unit_ok.verdict == wtp::Verdict::holds);
        CHECK(unit_ok.note == "second eigenvalue equals 1; a weight below 1 exists (resolved analytically)");

        const auto unit_bad = wtp::criterion_catalog(unit_second_lambda(), gam("constone"),
                                                     wtp::CatalogNotion::s_above1_t_at_most1, 2.0, 0.5);
        CHECK(unit_bad.verdict == wtp::Verdict::fails);
        CHECK(unit_bad.note == "second eigenvalue equals 1 and no weight is below 1");
        CHECK(unit_bad.diagnostics[0].trend == wtp::Trend::diverges);

        CHECK_THROWS_WITH(wtp::criterion_catalog(lam("poly alpha=2"), gam("constone"),
                                                 wtp::CatalogNotion::s_above1_t_at_most1, 1.0, 0.5),
                          "catalog regime s>1, t<=1 needs s > 1 and t in (0,1]");
    }

    SECTION("the explicit unit-second entry rejects a second eigenvalue below 1") {
        const auto ok = wtp::criterion_catalog(unit_second_lambda(), gam("geometric q=0.5"),
                                               wtp::CatalogNotion::s_above1_t_at_most1_unit_second,
                                               2.0, 0.5);
        CHECK(ok.verdict == wtp::Verdict::holds);
        CHECK_THROWS_WITH(wtp::criterion_catalog(lam("geometric q=0.5"), gam("geometric q=0.5"),
                                                 wtp::CatalogNotion::s_above1_t_at_most1_unit_second,
                                                 2.0, 0.5),
                          "regime mismatch: second eigenvalue is below one");
    }

    SECTION("s>1, t>1 ignores the weights entirely") {
        const auto r = wtp::criterion_catalog(lam("poly alpha=2"), gam("constone"),
                                              wtp::CatalogNotion::s_above1_t_above1, 2.0, 2.0);
        CHECK(r.notion == "EXP-(s,t)-WT s>1 t>1");
        CHECK(r.verdict == wtp::Verdict::holds);
        CHECK_THROWS_WITH(wtp::criterion_catalog(lam("poly alpha=2"), gam("constone"),
                                                 wtp::CatalogNotion::s_above1_t_above1, 2.0, 1.0),
                          "catalog regime s>1, t>1 needs s > 1 and t > 1");
    }

    SECTION("s<1, t>1 tests the eta-powered log ratio") {
        const auto hold = wtp::criterion_catalog(lam("explinear c=1"), gam("constone"),
                                                 wtp::CatalogNotion::s_below1_t_above1, 0.5, 2.0);
        CHECK(hold.notion == "EXP-(s,t)-WT s<1 t>1");
        CHECK(hold.verdict == wtp::Verdict::holds);
        CHECK_THAT(hold.criterion, ContainsSubstring("eta=0.333333"));

        const auto fail = wtp::criterion_catalog(lam("poly alpha=2"), gam("constone"),
                                                 wtp::CatalogNotion::s_below1_t_above1, 0.5, 2.0);
        CHECK(fail.verdict == wtp::Verdict::fails);
        CHECK(fail.diagnostics[0].trend == wtp::Trend::vanishes);

        CHECK_THROWS_WITH(wtp::criterion_catalog(lam("poly alpha=2"), gam("constone"),
                                                 wtp::CatalogNotion::s_below1_t_above1, 1.5, 2.0),
                          "catalog regime s<1, t>1 needs s in (0,1) and t > 1");
    }
}

TEST_CASE("threshold-function characterization for s<1, t<=1", "[tract]") {
    const auto hold =
        wtp::criterion_st_wt_thresholds(lam("geometric q=0.5"), gam("exppower c=1 beta=2"), 0.5, 0.5);
    CHECK(hold.notion == "EXP-(s,t)-WT s<1 t<=1");
    CHECK(hold.verdict == wtp::Verdict::holds);
    CHECK(hold.certifying);
    CHECK(hold.note == "characterization is t-independent within 0<t<=1");
    REQUIRE(hold.diagnostics.size() == 2);
    CHECK(hold.diagnostics[0].name == "lnln j(eps) / lnln(1/eps)");
    CHECK(hold.diagnostics[0].trend == wtp::Trend::vanishes);
    CHECK(hold.diagnostics[1].name == "d(eps)^(1-s) * ln j(eps) / (ln 1/eps)^0.5");
    CHECK(hold.diagnostics[1].trend == wtp::Trend::vanishes);

    const auto fail =
        wtp::criterion_st_wt_thresholds(lam("poly alpha=2"), gam("exppower c=1 beta=2"), 0.5, 0.5);
    CHECK(fail.verdict == wtp::Verdict::fails);
    CHECK(fail.diagnostics[0].trend == wtp::Trend::bounded_positive);
    CHECK(fail.diagnostics[1].trend == wtp::Trend::diverges);

    SECTION("both routes must agree before the verdict holds") {
        const auto mixed =
            wtp::criterion_st_wt_thresholds(unit_second_lambda(), gam("constone"), 0.5, 0.5);
        CHECK(mixed.diagnostics[0].trend == wtp::Trend::vanishes);
        CHECK(mixed.diagnostics[1].trend == wtp::Trend::diverges);
        CHECK(mixed.verdict == wtp::Verdict::fails);
    }

    CHECK_THROWS_WITH(wtp::criterion_st_wt_thresholds(lam("poly alpha=2"), gam("constone"), 1.0, 0.5),
                      "criterion_st_wt_thresholds: s must lie in (0,1)");
    CHECK_THROWS_WITH(wtp::criterion_st_wt_thresholds(lam("poly alpha=2"), gam("constone"), 0.5, 2.0),
                      "criterion_st_wt_thresholds: t must lie in (0,1]");
}

TEST_CASE("sequence-side necessary and sufficient conditions", "[tract]") {
    SECTION("fast weights satisfy both sides") {
        const auto pair =
            wtp::criterion_st_wt_sequences(lam("explinear c=1"), gam("exppower c=1 beta=2"), 0.5, 0.5);
        CHECK(pair.necessary.notion == "EXP-(s,t)-WT s<1 t<=1 [necessary condition]");
        CHECK(pair.necessary.verdict == wtp::Verdict::holds);
        CHECK_FALSE(pair.necessary.certifying);
        CHECK(pair.necessary.note ==
              "necessary only: failing refutes the notion, holding does not certify it");

        CHECK(pair.sufficient.notion == "EXP-(s,t)-WT s<1 t<=1 [sufficient condition]");
        CHECK(pair.sufficient.verdict == wtp::Verdict::holds);
        CHECK_FALSE(pair.sufficient.certifying);
        CHECK(pair.sufficient.note ==
              "sufficient only: holding certifies the notion, failing does not refute it");

        CHECK(pair.necessary.diagnostics[1].name == "ln(1/gamma_j) / j^1");
        CHECK(pair.sufficient.diagnostics[1].name == "ln(1/gamma_j) / j^1.5");
        CHECK(pair.necessary.diagnostics[0].gap_count == 1);
        CHECK(pair.necessary.diagnostics[0].samples[0].gap);
    }

    SECTION("geometric weights decay too slowly for the index power") {
        const auto pair =
            wtp::criterion_st_wt_sequences(lam("explinear c=1"), gam("geometric q=0.5"), 0.5, 0.5);
        CHECK(pair.necessary.verdict == wtp::Verdict::fails);
        CHECK(pair.necessary.diagnostics[1].trend == wtp::Trend::bounded_positive);
        CHECK(pair.sufficient.verdict == wtp::Verdict::fails);
        CHECK(pair.sufficient.diagnostics[1].trend == wtp::Trend::vanishes);
    }

    SECTION("polynomial eigenvalues fail the eigen side") {
        const auto pair =
            wtp::criterion_st_wt_sequences(lam("poly alpha=2"), gam("exppower c=1 beta=2"), 0.5, 0.5);
        CHECK(pair.necessary.verdict == wtp::Verdict::fails);
        CHECK(pair.necessary.diagnostics[0].trend == wtp::Trend::bounded_positive);
    }

    CHECK_THROWS_WITH(wtp::criterion_st_wt_sequences(lam("poly alpha=2"), gam("constone"), 0.5, 0.0),
                      "criterion_st_wt_sequences: delta must be > 0");
    CHECK_THROWS_WITH(wtp::criterion_st_wt_sequences(lam("poly alpha=2"), gam("constone"), 1.0, 0.5),
                      "criterion_st_wt_sequences: s must lie in (0,1)");
}

TEST_CASE("uniform notion needs doubly-exponential decay on both sides", "[tract]") {
    const auto hold = wtp::criterion_uwt(lam("geometric q=0.5"), gam("expexp c=1"));
    CHECK(hold.notion == "EXP-UWT");
    CHECK(hold.verdict == wtp::Verdict::holds);
    CHECK(hold.criterion == "lnln(1/lambda_j)/lnln j -> inf and lnln(1/gamma_j)/ln j -> inf");

    const auto fail = wtp::criterion_uwt(lam("geometric q=0.5"), gam("exppower c=1 beta=2"));
    CHECK(fail.verdict == wtp::Verdict::fails);
    CHECK(fail.diagnostics[1].trend == wtp::Trend::bounded_positive);

    const auto zt = wtp::criterion_uwt(zero_tail_lambda(), gam("expexp c=1"));
    CHECK(zt.verdict == wtp::Verdict::holds);

    CHECK_THROWS_WITH(wtp::criterion_uwt(gam("constone"), gam("constone")),
                      "criterion: first sequence must be in the eigenvalue role");
    CHECK_THROWS_WITH(wtp::criterion_uwt(lam("poly alpha=2"), lam("poly alpha=2")),
                      "criterion: second sequence must be in the weight role");
}

TEST_CASE("path-grid heuristic for s<1, t=1", "[tract]") {
    const std::vector<std::string> path_names = {
        "path d=2, k=1, j->inf",  "path d->inf, k=1, j=2^d", "path d->inf, k=d, j=2",
        "path d->inf, k=d, j=d",  "path d=4, k=1, j->inf",   "path d->inf, k=j=sqrt(d)",
    };

    SECTION("doubly-exponential decay on both sides diverges on every probed path") {
        for (const auto& pair : {std::pair{zero_tail_lambda(), gam("expexp c=1")},
                                 std::pair{lam("expexp c=1"), gam("expexp c=1")}}) {
            const auto r = wtp::criterion_st_wt_grid(pair.first, pair.second, 0.5);
            INFO(pair.first.describe() << " / " << pair.second.describe());
            CHECK(r.notion == "EXP-(s,1)-WT s<1 [path grid]");
            CHECK(r.verdict == wtp::Verdict::holds);
            CHECK_FALSE(r.certifying);
            CHECK(r.note == "path-grid heuristic; divergence on the probed paths is evidence, not proof");
            REQUIRE(r.diagnostics.size() == path_names.size());
            for (std::size_t i = 0; i < path_names.size(); ++i) {
                INFO("path " << i);
                CHECK(r.diagnostics[i].name == path_names[i]);
                CHECK(r.diagnostics[i].trend == wtp::Trend::diverges);
            }
        }
    }

    SECTION("polynomial eigenvalues vanish along the growing-index paths") {
        const auto r = wtp::criterion_st_wt_grid(lam("poly alpha=2"), gam("geometric q=0.5"), 0.5);
        CHECK(r.verdict == wtp::Verdict::fails);
        CHECK(r.diagnostics[0].trend == wtp::Trend::vanishes);
        CHECK(r.diagnostics[1].trend == wtp::Trend::vanishes);
    }

    SECTION("a unit second eigenvalue with flat weights fails") {
        const auto r = wtp::criterion_st_wt_grid(unit_second_lambda(), gam("constone"), 0.5);
        CHECK(r.verdict == wtp::Verdict::fails);
    }

    SECTION("geometric eigenvalues with doubly-exponential weights survive all paths") {
        const auto r = wtp::criterion_st_wt_grid(lam("geometric q=0.5"), gam("expexp c=1"), 0.5);
        CHECK(r.verdict == wtp::Verdict::holds);
    }

    SECTION("an exhausted path family without failures stays inconclusive") {
        wtp::DiagnosticThresholds thr;
        thr.min_probes = 21;
        const auto r = wtp::criterion_st_wt_grid(lam("expexp c=1"), gam("expexp c=1"), 0.5, thr);
        CHECK(r.verdict == wtp::Verdict::inconclusive);
    }

    SECTION("the square-root path uses its own ten-probe ladder") {
        const auto r = wtp::criterion_st_wt_grid(lam("expexp c=1"), gam("expexp c=1"), 0.5);
        CHECK(r.diagnostics[5].samples.size() == 10);
        CHECK(r.diagnostics[1].samples.size() == 40);
    }

    CHECK_THROWS_WITH(wtp::criterion_st_wt_grid(lam("poly alpha=2"), gam("constone"), 1.0),
                      "criterion_st_wt_grid: s must lie in (0,1)");
}

TEST_CASE("full classification report", "[tract]") {
    const std::vector<std::string> notions = {
        "EXP-SPT",
        "EXP-PT",
        "EXP-QPT",
        "EXP-WT",
        "EXP-(1,t)-WT t<1",
        "EXP-(1,t)-WT t>1",
        "EXP-(s,t)-WT s>1 t<=1",
        "EXP-(s,t)-WT s>1 t>1",
        "EXP-(s,t)-WT s<1 t>1",
        "EXP-(s,1)-WT s<1 [path grid]",
        "EXP-(s,t)-WT s<1 t<=1",
        "EXP-(s,t)-WT s<1 t<=1 [necessary condition]",
        "EXP-(s,t)-WT s<1 t<=1 [sufficient condition]",
        "EXP-UWT",
    };
    const std::vector<std::string> implications = {
        "EXP-SPT == EXP-PT",
        "EXP-SPT => EXP-QPT",
        "EXP-QPT => EXP-WT",
        "EXP-UWT => EXP-(1,t)-WT t<1",
        "EXP-UWT => EXP-(1,t)-WT t>1",
        "EXP-UWT => EXP-(s,t)-WT s>1 t<=1",
        "EXP-UWT => EXP-(s,t)-WT s>1 t>1",
        "EXP-UWT => EXP-(s,t)-WT s<1 t>1",
        "EXP-UWT => EXP-(s,t)-WT s<1 t<=1",
    };

    SECTION("entries arrive in a fixed order with fixed implication checks") {
        const auto rep = wtp::classify(lam("geometric q=0.5"), gam("expexp c=1"));
        REQUIRE(rep.entries.size() == notions.size());
        for (std::size_t i = 0; i < notions.size(); ++i) CHECK(rep.entries[i].notion == notions[i]);
        CHECK(rep.checked_implications == implications);
        CHECK(rep.entries[9].certifying == false);
        CHECK(rep.entries[11].certifying == false);
        CHECK(rep.entries[12].certifying == false);
    }

    SECTION("a uniformly tractable pair holds everywhere") {
        const auto rep = wtp::classify(zero_tail_lambda(), gam("expexp c=1"));
        for (const auto& e : rep.entries) {
            INFO(e.notion);
            CHECK(e.verdict == wtp::Verdict::holds);
        }
    }

    SECTION("geometric eigenvalues with doubly-exponential weights split the notions") {
        const auto rep = wtp::classify(lam("geometric q=0.5"), gam("expexp c=1"));
        using V = wtp::Verdict;
        const std::vector<V> expected = {V::fails, V::fails, V::fails, V::holds, V::holds,
                                         V::holds, V::holds, V::holds, V::holds, V::holds,
                                         V::holds, V::holds, V::holds, V::holds};
        CHECK(verdicts(rep) == expected);
    }

    SECTION("a unit second eigenvalue with flat weights fails the weight-sensitive notions") {
        const auto rep = wtp::classify(unit_second_lambda(), gam("constone"));
        using V = wtp::Verdict;
        const std::vector<V> expected = {V::fails, V::fails, V::fails, V::fails, V::fails,
                                         V::holds, V::fails, V::holds, V::holds, V::fails,
                                         V::fails, V::fails, V::fails, V::fails};
        CHECK(verdicts(rep) == expected);
    }

    SECTION("classification is deterministic") {
        const auto a = wtp::classify(lam("geometric q=0.5"), gam("exppower c=1 beta=2"));
        const auto b = wtp::classify(lam("geometric q=0.5"), gam("exppower c=1 beta=2"));
        CHECK(verdicts(a) == verdicts(b));
        REQUIRE(a.entries.size() == b.entries.size());
        for (std::size_t i = 0; i < a.entries.size(); ++i)
            CHECK(a.entries[i].criterion == b.entries[i].criterion);
    }

    SECTION("parameter validation") {
        const auto l = lam("geometric q=0.5");
        const auto g = gam("geometric q=0.5");
        wtp::ClassifyParams ps;
        ps.s = 1.0;
        CHECK_THROWS_WITH(wtp::classify(l, g, ps), "classify: s must lie in (0,1)");
        ps = {};
        ps.t = 0.0;
        CHECK_THROWS_WITH(wtp::classify(l, g, ps), "classify: t must lie in (0,1]");
        ps = {};
        ps.delta = 0.0;
        CHECK_THROWS_WITH(wtp::classify(l, g, ps), "classify: delta must be > 0");
        ps = {};
        ps.s_gt1 = 1.0;
        CHECK_THROWS_WITH(wtp::classify(l, g, ps), "classify: s_gt1 must be > 1");
        ps = {};
        ps.t_gt1 = 1.0;
        CHECK_THROWS_WITH(wtp::classify(l, g, ps), "classify: t_gt1 must be > 1");
    }
}

TEST_CASE("equivalence crosschecks between equivalent limit conditions", "[tract]") {
    SECTION("check list shape and names") {
        const auto checks = wtp::equivalence_crosschecks(lam("geometric q=0.5"), gam("geometric q=0.5"));
        REQUIRE(checks.size() == 7);
        CHECK(checks[0].name == "lnln-threshold vs lnln-eigen-decay");
        CHECK(checks[1].name == "lnln-threshold vs threshold-ratio-power (all delta)");
        CHECK(checks[2].name == "lnln-eigen-decay vs eigen-power-log (all alpha)");
        CHECK(checks[3].name == "dimension-power vs weight-index-power s=0.25");
        CHECK(checks[4].name == "dimension-power vs weight-index-power s=0.5");
        CHECK(checks[5].name == "dimension-power vs weight-index-power s=0.75");
        CHECK(checks[6].name == "lnln-weight-decay vs weight-power-over-index (all alpha)");
        for (const auto& c : checks) CHECK(c.applicable);
    }

    SECTION("weight-side checks are inapplicable without decaying weights") {
        const auto checks = wtp::equivalence_crosschecks(lam("geometric q=0.5"), gam("constone"));
        for (std::size_t i : {std::size_t{3}, std::size_t{4}, std::size_t{5}, std::size_t{6}})
            CHECK_FALSE(checks[i].applicable);
        for (const auto& c : checks) CHECK(c.consistent());
    }

    SECTION("representative family pairs never contradict") {
        const std::vector<std::string> ls = {"poly alpha=2", "geometric q=0.5", "explogpow beta=2",
                                             "explinear c=1", "expexp c=1"};
        const std::vector<std::string> gs = {"poly alpha=1", "geometric q=0.5", "exppower c=1 beta=2",
                                             "expexp c=1", "constone"};
        for (const auto& l : ls) {
            for (const auto& g : gs) {
                const auto checks = wtp::equivalence_crosschecks(lam(l), gam(g));
                for (const auto& c : checks) {
                    INFO(l << " / " << g << " : " << c.name << " left="
                           << wtp::condition_state_name(c.left)
                           << " right=" << wtp::condition_state_name(c.right));
                    CHECK(c.consistent());
                }
            }
        }
    }

    SECTION("list-backed families participate too") {
        for (const auto& l : {zero_tail_lambda(), unit_second_lambda()}) {
            const auto checks = wtp::equivalence_crosschecks(l, gam("exppower c=1 beta=1"));
            for (const auto& c : checks) {
                INFO(l.describe() << " : " << c.name);
                CHECK(c.consistent());
            }
        }
    }

    SECTION("consistency semantics") {
        using S = wtp::ConditionState;
        wtp::EquivalenceCheck c;
        c.left = S::satisfied;
        c.right = S::violated;
        CHECK_FALSE(c.consistent());
        c.right = S::undecided;
        CHECK(c.consistent());
        c.left = S::violated;
        c.right = S::satisfied;
        c.applicable = false;
        CHECK(c.consistent());

        CHECK(wtp::aggregate_all({S::satisfied, S::satisfied}) == S::satisfied);
        CHECK(wtp::aggregate_all({S::satisfied, S::undecided}) == S::undecided);
        CHECK(wtp::aggregate_all({S::undecided, S::violated}) == S::violated);
        CHECK(wtp::aggregate_all({}) == S::satisfied);
    }
}
