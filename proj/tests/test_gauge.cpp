#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace bcs;
using bcs_test::canonical_gauge;
using bcs_test::canonical_plan;
using bcs_test::canonical_system;

TEST_CASE("derived gauge: breakpoint frame") {
    const GaugeFunction& h = canonical_gauge();
    const BalancedSystem& system = canonical_system();
    // (0,0), then a pair per level: 2 * 4 + 1 = 9.
    CHECK(h.breakpoints().size() == 9);
    CHECK(h.breakpoints().front().first == 0);
    CHECK(h.breakpoints().front().second == 0);
    CHECK(h.depth() == 4);
    CHECK(h.resolution_floor() == system.b(4));
    CHECK(h.tail_threshold() == Rational(2) * system.b(1));
    for (std::size_t k = 1; k < h.breakpoints().size(); ++k) {
        CHECK(h.breakpoints()[k - 1].first < h.breakpoints()[k].first);
        CHECK(h.breakpoints()[k - 1].second <= h.breakpoints()[k].second);
    }
}

TEST_CASE("gauge hits 1/(a_1..a_n) at every separation radius") {
    const GaugeFunction& h = canonical_gauge();
    const BalancedSystem& system = canonical_system();
    Int product = 1;
    for (int n = 1; n <= system.depth(); ++n) {
        product *= system.plan().branching[n - 1];
        CHECK(eval_gauge(h, system.b(n)) * Rational(product) == 1);
    }
    CHECK(eval_gauge(h, system.b(3)) == Rational(1, 32));
    CHECK(eval_gauge(h, system.b(4)) == Rational(1, 3072));
}

TEST_CASE("gauge is constant between 2b_(n+1) and b_n") {
    const GaugeFunction& h = canonical_gauge();
    const BalancedSystem& system = canonical_system();
    for (int n = 1; n < system.depth(); ++n) {
        Int product = 1;
        for (int k = 0; k < n; ++k) product *= system.plan().branching[k];
        const Rational expected(Int(1), product);
        const Rational left = Rational(2) * system.b(n + 1);
        const Rational right = system.b(n);
        CHECK(eval_gauge(h, left) == expected);
        CHECK(eval_gauge(h, right) == expected);
        CHECK(eval_gauge(h, Rational(left + right) / 2) == expected);
        CHECK(eval_gauge(h, Rational(left * 2 + right) / 3) == expected);
    }
}

TEST_CASE("gauge interpolates linearly on [b_n, 2b_n]") {
    const GaugeFunction& h = canonical_gauge();
    const BalancedSystem& system = canonical_system();
    const Rational b1 = system.b(1);
    // Midpoint of the top linear piece: halfway between 1/a_1 and 1.
    CHECK(eval_gauge(h, Rational(3) * b1 / 2) ==
          Rational(Rational(1, 2) + 1) / 2);
    // Quarter point.
    CHECK(eval_gauge(h, Rational(5) * b1 / 4) ==
          Rational(1, 2) + Rational(1, 4) * Rational(1, 2));
    // Same on the deepest linear piece [b_4, 2b_4].
    const Rational b4 = system.b(4);
    const Rational low = eval_gauge(h, b4);
    const Rational high = eval_gauge(h, 2 * b4);
    CHECK(eval_gauge(h, Rational(3) * b4 / 2) == Rational(low + high) / 2);
}

TEST_CASE("gauge boundary behavior: zero, tail, below resolution") {
    const GaugeFunction& h = canonical_gauge();
    const BalancedSystem& system = canonical_system();
    CHECK(eval_gauge(h, Rational(0)) == 0);
    CHECK(eval_gauge(h, Rational(2) * system.b(1)) == 1);
    CHECK(eval_gauge(h, Rational(1)) == 1);
    CHECK(eval_gauge(h, Rational(1000)) == 1);
    CHECK_THROWS_AS(eval_gauge(h, Rational(-1, 2)), DomainError);
    try {
        eval_gauge(h, system.b(4) / 2);
        FAIL("expected BelowResolution");
    } catch (const BelowResolution& e) {
        CHECK(e.floor == to_string(system.b(4)));
    }
}

TEST_CASE("gauge is monotone on random resolved pairs") {
    const GaugeFunction& h = canonical_gauge();
    const Rational lo = h.resolution_floor();
    const Rational span = Rational(3) * h.tail_threshold() - lo;
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const Rational t1(static_cast<long long>(rng() % 100000), 100000);
        const Rational t2(static_cast<long long>(rng() % 100000), 100000);
        Rational x = lo + span * t1;
        Rational y = lo + span * t2;
        if (y < x) std::swap(x, y);
        CHECK(eval_gauge(h, x) <= eval_gauge(h, y));
    }
}

TEST_CASE("gauge constructor rejects malformed tables") {
    using BP = std::vector<std::pair<Rational, Rational>>;
    CHECK_THROWS_AS(GaugeFunction(BP{}, 1), DomainError);
    CHECK_THROWS_AS(GaugeFunction(BP{{Rational(0), Rational(0)},
                                     {Rational(1), Rational(1)}},
                                  1),
                    DomainError);  // too few points
    CHECK_THROWS_AS(GaugeFunction(BP{{Rational(1, 2), Rational(0)},
                                     {Rational(1), Rational(1, 2)},
                                     {Rational(2), Rational(1)}},
                                  1),
                    DomainError);  // must start at (0, 0)
    CHECK_THROWS_AS(GaugeFunction(BP{{Rational(0), Rational(0)},
                                     {Rational(1), Rational(1, 2)},
                                     {Rational(1), Rational(1)}},
                                  1),
                    DomainError);  // x not strictly increasing
    CHECK_THROWS_AS(GaugeFunction(BP{{Rational(0), Rational(0)},
                                     {Rational(1), Rational(1)},
                                     {Rational(2), Rational(1, 2)}},
                                  1),
                    DomainError);  // value decreases
    CHECK_THROWS_AS(GaugeFunction(BP{{Rational(0), Rational(0)},
                                     {Rational(1), Rational(1, 2)},
                                     {Rational(2), Rational(1)}},
                                  0),
                    DomainError);  // depth must be positive
}

TEST_CASE("derivation requires the radius decay 2b_(n+1) < b_n") {
    ConstructionPlan plan;
    plan.strict_growth = false;
    plan.branching = {2, 2};
    const BalancedSystem good = build_balanced_system(plan);
    std::vector<std::vector<ClosedInterval>> levels = {good.level_pieces(1),
                                                       good.level_pieces(2)};
    const BalancedSystem bad = BalancedSystem::from_parts(
        plan, {Rational(1, 4), Rational(1, 8)}, good.phi(), levels);
    CHECK_THROWS_AS(derive_gauge(bad), DomainError);
}

TEST_CASE("linear minorant holds for the level-1 hull diameter") {
    const GaugeFunction& h = canonical_gauge();
    const Rational c = hull_diameter(canonical_system().level_pieces(1));
    const MinorantReport report = check_linear_minorant(h, c);
    CHECK(report.pass);
    CHECK_FALSE(report.witness_x.has_value());
    CHECK_FALSE(report.reduction_note.empty());
    REQUIRE_FALSE(report.rows.empty());
    CHECK(report.rows.front().x == 0);
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        const MinorantRow& row = report.rows[k];
        CHECK(row.ok);
        CHECK(row.gauge_value >= row.linear_value);
        CHECK(row.linear_value == row.x / c);
        if (k > 0) CHECK(report.rows[k - 1].x < row.x);
    }
    // Checked rows stop at b_1; the linear comparison is only claimed there.
    CHECK(report.rows.back().x == canonical_system().b(1));
}

TEST_CASE("linear minorant fails for a steep slope, with the first witness") {
    const GaugeFunction& h = canonical_gauge();
    const Rational c = canonical_system().b(4);  // x/c = 1 already at b_4
    const MinorantReport report = check_linear_minorant(h, c);
    CHECK_FALSE(report.pass);
    REQUIRE(report.witness_x.has_value());
    CHECK(*report.witness_x == canonical_system().b(4));
    CHECK_THROWS_AS(check_linear_minorant(h, Rational(0)), DomainError);
    CHECK_THROWS_AS(check_linear_minorant(h, Rational(-1)), DomainError);
}

TEST_CASE("gauge artifacts round trip exactly") {
    const GaugeFunction& h = canonical_gauge();
    const GaugeFunction back = gauge_from_json(gauge_json(h));
    CHECK(back == h);
    CHECK(gauge_json(back).dump(2) == gauge_json(h).dump(2));
}
