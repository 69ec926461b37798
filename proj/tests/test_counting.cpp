#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "wtp/counting.hpp"
#include "wtp/errors.hpp"
#include "wtp/instance.hpp"
#include "wtp/sequence_model.hpp"

using wtp::ProblemInstance;
using wtp::SequenceModel;
using wtp::SequenceRole;
using wtp::TailRule;

namespace {

ProblemInstance make(std::uint64_t d, const std::string& lam, const std::string& gam) {
    return ProblemInstance(d, SequenceModel::parse(SequenceRole::eigenvalues, lam),
                           SequenceModel::parse(SequenceRole::weights, gam));
}

}  // namespace

TEST_CASE("two geometric coordinates at eps=1/4 admit exactly four indices", "[counting]") {
    const auto inst = make(2, "geometric q=0.5", "geometric q=0.5");
    const auto r = wtp::count_exact(inst, 0.25);
    CHECK(r.count == 4);
    CHECK_FALSE(r.capped);
    CHECK(r.nodes_visited == 7);
    CHECK(r.max_depth_reached == 2);

    // Same region enumerated coordinate-by-coordinate.
    const auto b = wtp::count_bruteforce(inst, 0.25, 8);
    CHECK(b.count == 4);
}

TEST_CASE("pruned search and exhaustive enumeration agree across families", "[counting]") {
    const std::vector<std::string> lams = {
        "poly alpha=2", "geometric q=0.5", "geometric q=0.8",
        "explogpow beta=1.5", "explinear c=1", "expexp c=1",
    };
    const std::vector<std::string> gams = {
        "poly alpha=1", "geometric q=0.5", "exppower c=1 beta=2",
        "expexp c=1", "constone",
    };
    for (const auto& lam : lams)
        for (const auto& gam : gams)
            for (std::uint64_t d : {1ull, 2ull, 3ull})
                for (double eps : {0.6, 0.3, 0.12, 0.05}) {
                    const auto inst = make(d, lam, gam);
                    const auto fast = wtp::count_exact(inst, eps);
                    INFO(lam << " | " << gam << " | d=" << d << " eps=" << eps);
                    REQUIRE_FALSE(fast.capped);
                    // Any accepted index is bounded by the unweighted threshold index.
                    const std::uint64_t lim =
                        wtp::j_of_epsilon(inst.lambdas(), eps) + 1;
                    const auto slow = wtp::count_bruteforce(inst, eps, lim);
                    CHECK(fast.count == slow.count);
                }
}

TEST_CASE("list-backed sequences count like their closed-form twins", "[counting]") {
    const auto lam_list = SequenceModel::from_values(
        SequenceRole::eigenvalues, {1.0, 0.5, 0.25, 0.125}, TailRule::geometric, 0.5);
    const auto gam_list = SequenceModel::from_values(
        SequenceRole::weights, {0.5, 0.25}, TailRule::geometric, 0.5);
    const ProblemInstance a(3, lam_list, gam_list);
    const auto b = make(3, "geometric q=0.5", "geometric q=0.5");
    for (double eps : {0.5, 0.25, 0.1, 0.03})
        CHECK(wtp::count_exact(a, eps).count == wtp::count_exact(b, eps).count);
}

TEST_CASE("the cap freezes the count and reports saturation", "[counting]") {
    // lambda geometric 1/2, unit weights, d=3, eps=0.005: T/ln2 = 15.29, so
    // a tuple qualifies iff its index excesses sum to at most 15, far from
    // the rounding-sensitive boundary. Count = C(18,3) = 816.
    const auto inst = make(3, "geometric q=0.5", "constone");
    const double eps = 0.005;

    const auto full = wtp::count_exact(inst, eps);
    REQUIRE_FALSE(full.capped);
    CHECK(full.count == 816);

    const auto exact_cap = wtp::count_exact(inst, eps, 816);
    CHECK_FALSE(exact_cap.capped);
    CHECK(exact_cap.count == 816);

    const auto tight = wtp::count_exact(inst, eps, 815);
    CHECK(tight.capped);
    CHECK(tight.count == 815);
    CHECK(tight.cap == 815);

    const auto loose = wtp::count_exact(inst, eps, 100);
    CHECK(loose.capped);
    CHECK(loose.count == 100);
}

TEST_CASE("tolerances at or above one admit no indices", "[counting]") {
    const auto inst = make(4, "geometric q=0.5", "geometric q=0.5");
    CHECK(wtp::count_exact(inst, 1.0).count == 0);
    CHECK(wtp::count_exact(inst, 1.5).count == 0);
    CHECK(wtp::count_bruteforce(inst, 1.0, 4).count == 0);
}

TEST_CASE("dimensions past the activity horizon never change the count", "[counting]") {
    // gamma = (1/2)^d drops below eps^2 = 1/16 after d = 3.
    const double eps = 0.25;
    const auto base = wtp::count_exact(make(3, "geometric q=0.5", "geometric q=0.5"), eps);
    for (std::uint64_t d : {4ull, 5ull, 8ull}) {
        const auto r = wtp::count_exact(make(d, "geometric q=0.5", "geometric q=0.5"), eps);
        CHECK(r.count == base.count);
    }
}

TEST_CASE("exhaustive enumeration refuses oversized grids", "[counting]") {
    const auto inst = make(6, "poly alpha=1", "constone");
    CHECK_THROWS_WITH(wtp::count_bruteforce(inst, 0.5, 100, 1000),
                      Catch::Matchers::ContainsSubstring("point guard"));
    CHECK_THROWS_AS(wtp::count_bruteforce(inst, 0.5, 0), std::invalid_argument);
}

TEST_CASE("counting rejects non-positive tolerances", "[counting]") {
    const auto inst = make(2, "geometric q=0.5", "constone");
    CHECK_THROWS_AS(wtp::count_exact(inst, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(wtp::count_exact(inst, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(wtp::count_bruteforce(inst, 0.0, 4), std::invalid_argument);
}

TEST_CASE("repeated runs visit identical node counts", "[counting]") {
    const auto inst = make(3, "poly alpha=2", "geometric q=0.7");
    const auto a = wtp::count_exact(inst, 0.1);
    const auto b = wtp::count_exact(inst, 0.1);
    CHECK(a.count == b.count);
    CHECK(a.nodes_visited == b.nodes_visited);
    CHECK(a.max_depth_reached == b.max_depth_reached);
    CHECK(a.nodes_visited >= a.count);
}
