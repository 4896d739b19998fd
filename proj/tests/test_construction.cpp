#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "support.hpp"

using namespace bcs;
using bcs_test::canonical_plan;
using bcs_test::canonical_system;
using bcs_test::idx;

namespace {

// Copies of the canonical parts, for building tampered variants.
std::vector<std::vector<ClosedInterval>> canonical_levels() {
    const BalancedSystem& system = canonical_system();
    std::vector<std::vector<ClosedInterval>> levels;
    for (int level = 1; level <= system.depth(); ++level) {
        levels.push_back(system.level_pieces(level));
    }
    return levels;
}

BalancedSystem tampered(std::vector<std::vector<ClosedInterval>> levels) {
    const BalancedSystem& system = canonical_system();
    return BalancedSystem::from_parts(system.plan(), system.separations(), system.phi(),
                                      std::move(levels));
}

}  // namespace

TEST_CASE("plan validation: strict growth chain") {
    CHECK_NOTHROW(canonical_plan().validate());

    ConstructionPlan plan;
    plan.branching = {3};
    CHECK_NOTHROW(plan.validate());

    plan.branching = {1, 2};
    CHECK_THROWS_AS(plan.validate(), InvalidPlan);

    plan.branching = {2, 2, 8, 95};  // needs a_4 >= 3 * 32 = 96
    CHECK_THROWS_AS(plan.validate(), InvalidPlan);

    plan.branching = {2, 2, 7, 96};  // needs a_3 >= 2 * 4 = 8
    CHECK_THROWS_AS(plan.validate(), InvalidPlan);

    plan.branching = {2, 1, 8};  // needs a_2 >= 1 * 2 = 2
    CHECK_THROWS_AS(plan.validate(), InvalidPlan);
}

TEST_CASE("plan validation: relaxed mode only needs a_n >= 2") {
    ConstructionPlan plan;
    plan.strict_growth = false;
    plan.branching = {2, 2, 2, 2, 2};
    CHECK_NOTHROW(plan.validate());

    plan.branching = {2, 1};
    CHECK_THROWS_AS(plan.validate(), InvalidPlan);

    plan.branching = {2, 2, 2};
    plan.strict_growth = true;  // strict needs a_3 >= 8
    CHECK_THROWS_AS(plan.validate(), InvalidPlan);
}

TEST_CASE("plan validation: empty, degenerate ambient, capacity") {
    ConstructionPlan plan;
    CHECK_THROWS_AS(plan.validate(), InvalidPlan);

    plan.branching = {2, 2};
    plan.ambient = ClosedInterval(Rational(1, 3), Rational(1, 3));
    CHECK_THROWS_AS(plan.validate(), InvalidPlan);

    plan = ConstructionPlan{};
    plan.branching = {2, 2, 8, 96, 12288};  // 37M pieces at the deepest level
    CHECK_THROWS_AS(plan.validate(), InvalidPlan);
}

TEST_CASE("multi-index prefix, rendering, ordering") {
    CHECK(idx({1, 2, 1}).str() == "1.2.1");
    CHECK(idx({7}).str() == "7");
    CHECK(idx({1}).is_prefix_of(idx({1, 2})));
    CHECK(idx({1, 2}).is_prefix_of(idx({1, 2})));
    CHECK_FALSE(idx({1, 2}).is_prefix_of(idx({1})));
    CHECK_FALSE(idx({2}).is_prefix_of(idx({1, 2})));
    CHECK(idx({1, 2}) == idx({1, 2}));
    CHECK(idx({1, 2}) != idx({2, 1}));
}

TEST_CASE("level rank and unrank are mutually inverse, lex ordered") {
    const std::vector<long long> branching = {2, 2, 8, 96};
    CHECK(level_rank(branching, idx({1, 1})) == 0);
    CHECK(level_rank(branching, idx({1, 2})) == 1);
    CHECK(level_rank(branching, idx({2, 1})) == 2);
    CHECK(level_rank(branching, idx({2, 2})) == 3);
    CHECK(level_unrank(branching, 2, 3) == idx({2, 2}));
    CHECK(level_unrank(branching, 4, 0) == idx({1, 1, 1, 1}));
    CHECK(level_unrank(branching, 4, 3071) == idx({2, 2, 8, 96}));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const int level = 1 + static_cast<int>(rng() % 4);
        long long count = 1;
        for (int k = 0; k < level; ++k) count *= branching[k];
        const long long rank = static_cast<long long>(rng() % count);
        CHECK(level_rank(branching, level_unrank(branching, level, rank)) == rank);
    }

    CHECK_THROWS_AS(level_rank(branching, MultiIndex{}), DomainError);
    CHECK_THROWS_AS(level_rank(branching, idx({0, 1})), DomainError);
    CHECK_THROWS_AS(level_rank(branching, idx({3, 1})), DomainError);
    CHECK_THROWS_AS(level_rank(branching, idx({1, 1, 1, 1, 1})), LevelOutOfRange);
    CHECK_THROWS_AS(level_unrank(branching, 0, 0), LevelOutOfRange);
    CHECK_THROWS_AS(level_unrank(branching, 2, 4), DomainError);
}

TEST_CASE("index table: odd positions, value length limits") {
    std::map<int, MultiIndex> table;
    table[1] = idx({1});
    table[3] = idx({2});
    CHECK_NOTHROW(IndexFunction{table});

    table[2] = idx({1});
    CHECK_THROWS_AS(IndexFunction{table}, DomainError);
    table.erase(2);

    table[3] = idx({1, 1, 1, 1});  // length 4 > 3
    CHECK_THROWS_AS(IndexFunction{table}, IndexFunctionInfeasible);

    const IndexFunction phi(std::map<int, MultiIndex>{{1, idx({1})}});
    CHECK(phi.has(1));
    CHECK_FALSE(phi.has(3));
    CHECK(phi.at(1) == idx({1}));
    CHECK_THROWS_AS(phi.at(3), DomainError);
}

TEST_CASE("canonical index table matches a brute-force length-then-lex sort") {
    ConstructionPlan plan;
    plan.branching = {2, 2, 8};
    const IndexFunction phi = canonical_index_function(plan, 15);

    // Independent enumeration: generate all indices of length <= 3 and sort.
    std::vector<std::vector<int>> all;
    for (int i = 1; i <= 2; ++i) {
        all.push_back({i});
        for (int k = 1; k <= 2; ++k) {
            all.push_back({i, k});
            for (int r = 1; r <= 8; ++r) all.push_back({i, k, r});
        }
    }
    std::sort(all.begin(), all.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    for (int j = 1; 2 * j - 1 <= 15; ++j) {
        MultiIndex expected;
        expected.v = all[static_cast<std::size_t>(j - 1)];
        CHECK(phi.at(2 * j - 1) == expected);
    }
}

TEST_CASE("canonical index table: known values and feasibility bound") {
    const IndexFunction phi = canonical_index_function(canonical_plan(), 5);
    CHECK(phi.at(1) == idx({1}));
    CHECK(phi.at(3) == idx({2}));
    CHECK(phi.at(5) == idx({1, 1}));

    // Building-sized table stops below the depth.
    const IndexFunction building = canonical_index_function(canonical_plan());
    CHECK(building.has(1));
    CHECK(building.has(3));
    CHECK_FALSE(building.has(5));

    // A depth-1 plan has only 2 indices; the 3rd odd position has none left.
    ConstructionPlan tiny;
    tiny.branching = {2};
    CHECK_THROWS_AS(canonical_index_function(tiny, 5), DomainError);
}

TEST_CASE("canonical build: counts, radii, nesting frame") {
    const BalancedSystem& system = canonical_system();
    CHECK(system.depth() == 4);
    CHECK(system.level_count(1) == 2);
    CHECK(system.level_count(2) == 4);
    CHECK(system.level_count(3) == 32);
    CHECK(system.level_count(4) == 3072);
    CHECK(system.level_pieces(4).size() == 3072);

    for (int n = 1; n <= 4; ++n) {
        const Rational& b = system.b(n);
        CHECK(b > 0);
        // Radii are powers of one half by construction.
        const Int num = boost::multiprecision::numerator(b);
        const Int den = boost::multiprecision::denominator(b);
        CHECK(num == 1);
        CHECK((den & (den - 1)) == 0);
        if (n < 4) CHECK(Rational(2) * system.b(n + 1) < b);
    }

    // Every piece sits inside the ambient interval and inside its parent.
    for (int level = 2; level <= 4; ++level) {
        const auto& pieces = system.level_pieces(level);
        const auto& parents = system.level_pieces(level - 1);
        const long long fanout = system.plan().branching[level - 1];
        for (std::size_t q = 0; q < pieces.size(); ++q) {
            const ClosedInterval& parent = parents[q / fanout];
            CHECK(parent.contains(pieces[q]));
        }
    }
    for (const ClosedInterval& piece : system.level_pieces(1)) {
        CHECK(system.plan().ambient.contains(piece));
    }
}

TEST_CASE("canonical build passes every validation check") {
    const ValidationReport report = validate_balanced(canonical_system());
    CHECK(report.all_pass());
    for (const char* name : {"growth", "nesting", "diameter_bound", "separation",
                             "odd_level_separation", "radius_decay", "exact_diameters"}) {
        CAPTURE(name);
        CHECK(report.check(name).pass);
        CHECK(report.check(name).witness.empty());
    }
    CHECK_THROWS_AS(report.check("no_such_check"), DomainError);
}

TEST_CASE("piece accessor agrees with the enumerated pieces") {
    const BalancedSystem& system = canonical_system();
    for (const auto& [index, piece] : elementary_pieces(system, 3)) {
        CHECK(system.piece(index) == piece);
    }
    CHECK_THROWS_AS(system.piece(idx({1, 1, 9})), DomainError);
    CHECK_THROWS_AS(system.piece(idx({1, 1, 1, 1, 1})), LevelOutOfRange);
    CHECK_THROWS_AS(system.b(0), LevelOutOfRange);
    CHECK_THROWS_AS(system.b(5), LevelOutOfRange);
    CHECK_THROWS_AS(system.level_pieces(5), LevelOutOfRange);
}

TEST_CASE("restricted enumeration lists exactly the descendants") {
    const BalancedSystem& system = canonical_system();
    const auto under_one = elementary_pieces(system, 4, idx({1}));
    CHECK(under_one.size() == 1536);
    for (const auto& [index, piece] : under_one) {
        CHECK(idx({1}).is_prefix_of(index));
        CHECK(system.piece(idx({1})).contains(piece));
    }
    const auto self = elementary_pieces(system, 2, idx({2, 1}));
    CHECK(self.size() == 1);
    CHECK(self.front().first == idx({2, 1}));

    CHECK_THROWS_AS(elementary_pieces(system, 5), LevelOutOfRange);
    CHECK_THROWS_AS(elementary_pieces(system, 0), LevelOutOfRange);
    CHECK_THROWS_AS(elementary_pieces(system, 1, idx({1, 1})), LevelOutOfRange);
}

TEST_CASE("representatives are the left endpoints in position order") {
    const BalancedSystem& system = canonical_system();
    const std::vector<Rational> reps = level_representatives(system, 3);
    const auto& pieces = system.level_pieces(3);
    REQUIRE(reps.size() == pieces.size());
    for (std::size_t q = 0; q < reps.size(); ++q) {
        CHECK(reps[q] == pieces[q].lo());
        if (q > 0) CHECK(reps[q - 1] < reps[q]);
    }
}

TEST_CASE("rebuilding is deterministic down to the serialized bytes") {
    const BalancedSystem first = build_balanced_system(canonical_plan());
    const BalancedSystem second = build_balanced_system(canonical_plan());
    CHECK(first == second);
    CHECK(system_json(first).dump(2) == system_json(second).dump(2));
}

TEST_CASE("assembling from parts rejects shape errors") {
    const BalancedSystem& system = canonical_system();
    auto levels = canonical_levels();

    // Wrong piece count at a level.
    auto broken = levels;
    broken[1].pop_back();
    CHECK_THROWS_AS(BalancedSystem::from_parts(system.plan(), system.separations(),
                                               system.phi(), broken),
                    DomainError);

    // Wrong number of separation radii.
    CHECK_THROWS_AS(BalancedSystem::from_parts(system.plan(), {Rational(1, 16)},
                                               system.phi(), levels),
                    DomainError);

    // Non-positive radius.
    auto radii = system.separations();
    radii[2] = 0;
    CHECK_THROWS_AS(
        BalancedSystem::from_parts(system.plan(), radii, system.phi(), levels),
        DomainError);

    // Missing index-table entry for an odd level.
    const IndexFunction sparse(std::map<int, MultiIndex>{{1, idx({1})}});
    CHECK_THROWS_AS(
        BalancedSystem::from_parts(system.plan(), system.separations(), sparse, levels),
        DomainError);

    // Invalid plan is rejected before any shape checks.
    ConstructionPlan bad = system.plan();
    bad.branching[3] = 95;
    CHECK_THROWS_AS(
        BalancedSystem::from_parts(bad, system.separations(), system.phi(), levels),
        InvalidPlan);
}

TEST_CASE("validator catches a separation violation with a witness") {
    auto levels = canonical_levels();
    // Slide the second level-1 piece until the gap equals exactly 2 b_1:
    // the property demands a strictly larger distance.
    const Rational b1 = canonical_system().b(1);
    const Rational gap = levels[0][1].lo() - levels[0][0].hi();
    levels[0][1] = levels[0][1].translated(-(gap - 2 * b1));
    // Keep children inside the moved parent out of scope: only level 1 moves,
    // so nesting breaks too; separation must still be reported on its own.
    const ValidationReport report = validate_balanced(tampered(std::move(levels)));
    CHECK_FALSE(report.all_pass());
    CHECK_FALSE(report.check("separation").pass);
    CHECK_FALSE(report.check("separation").witness.empty());
}

TEST_CASE("validator catches nesting, diameter, and exactness violations") {
    {
        auto levels = canonical_levels();
        // Push one level-4 piece outside its parent.
        levels[3][100] = levels[3][100].translated(Rational(1, 4));
        const ValidationReport report = validate_balanced(tampered(std::move(levels)));
        CHECK_FALSE(report.check("nesting").pass);
    }
    {
        auto levels = canonical_levels();
        // Inflate one level-2 piece beyond b_2.
        const ClosedInterval& old = levels[1][0];
        levels[1][0] = ClosedInterval(old.lo(), old.lo() + 2 * canonical_system().b(2));
        const ValidationReport report = validate_balanced(tampered(std::move(levels)));
        CHECK_FALSE(report.check("diameter_bound").pass);
    }
    {
        auto levels = canonical_levels();
        // Shrink one level-3 piece: still within every bound, no longer exact.
        const ClosedInterval& old = levels[2][5];
        levels[2][5] = ClosedInterval(old.lo(), old.hi() - canonical_system().b(3) / 4);
        const ValidationReport report = validate_balanced(tampered(std::move(levels)));
        CHECK(report.check("diameter_bound").pass);
        CHECK_FALSE(report.check("exact_diameters").pass);
    }
    {
        // Decay failure: radii replaced so 2 b_2 >= b_1.
        auto radii = canonical_system().separations();
        radii[1] = radii[0];
        const BalancedSystem system = BalancedSystem::from_parts(
            canonical_system().plan(), radii, canonical_system().phi(),
            canonical_levels());
        const ValidationReport report = validate_balanced(system);
        CHECK_FALSE(report.check("radius_decay").pass);
    }
}

TEST_CASE("validator catches an odd-level separation violation") {
    auto levels = canonical_levels();
    // Level 2 is built from odd parent level 1 with designated piece (1).
    // Swap the compressed outside children (under piece 2) with a wide
    // spread: move them to the far ends of their parent.
    const ClosedInterval parent = levels[0][1];
    const Rational r = canonical_system().b(2);
    levels[1][2] = ClosedInterval(parent.lo(), parent.lo() + r);
    levels[1][3] = ClosedInterval(parent.hi() - r, parent.hi());
    // Their children must follow to keep nesting intact at level 3.
    for (int child = 16; child < 32; ++child) {
        const long long parent_rank = child / 8;
        const ClosedInterval& new_parent = levels[1][static_cast<std::size_t>(parent_rank)];
        const Rational offset = new_parent.lo() - canonical_system()
                                                      .level_pieces(2)[static_cast<std::size_t>(parent_rank)]
                                                      .lo();
        levels[2][static_cast<std::size_t>(child)] =
            levels[2][static_cast<std::size_t>(child)].translated(offset);
    }
    for (int child = 16 * 96; child < 32 * 96; ++child) {
        const long long parent_rank = child / (8 * 96);
        const ClosedInterval& new_parent = levels[1][static_cast<std::size_t>(parent_rank)];
        const Rational offset = new_parent.lo() - canonical_system()
                                                      .level_pieces(2)[static_cast<std::size_t>(parent_rank)]
                                                      .lo();
        levels[3][static_cast<std::size_t>(child)] =
            levels[3][static_cast<std::size_t>(child)].translated(offset);
    }
    const ValidationReport report = validate_balanced(tampered(std::move(levels)));
    CHECK(report.check("nesting").pass);
    CHECK_FALSE(report.check("odd_level_separation").pass);
    CHECK_FALSE(report.check("odd_level_separation").witness.empty());
}

TEST_CASE("random relaxed plans build to fully valid systems") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 12; ++trial) {
        ConstructionPlan plan;
        plan.strict_growth = false;
        const int depth = 2 + static_cast<int>(rng() % 3);
        for (int n = 0; n < depth; ++n) {
            plan.branching.push_back(2 + static_cast<long long>(rng() % 3));
        }
        CAPTURE(trial);
        const BalancedSystem system = build_balanced_system(plan);
        const ValidationReport report = validate_balanced(system);
        for (const PropertyCheck& check : report.checks) {
            CAPTURE(check.property);
            CAPTURE(check.witness);
            CHECK(check.pass);
        }
    }
}

TEST_CASE("random strict plans build to fully valid systems") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 8; ++trial) {
        ConstructionPlan plan;
        const long long a1 = 2 + static_cast<long long>(rng() % 3);
        const long long a2 = a1 + static_cast<long long>(rng() % 3);
        const long long a3 = 2 * a1 * a2 + static_cast<long long>(rng() % 5);
        plan.branching = {a1, a2, a3};
        CAPTURE(trial);
        const BalancedSystem system = build_balanced_system(plan);
        const ValidationReport report = validate_balanced(system);
        for (const PropertyCheck& check : report.checks) {
            CAPTURE(check.property);
            CAPTURE(check.witness);
            CHECK(check.pass);
        }
    }
}

TEST_CASE("non-unit ambient intervals work end to end") {
    ConstructionPlan plan = canonical_plan();
    plan.ambient = ClosedInterval(Rational(-3, 2), Rational(7, 3));
    const BalancedSystem system = build_balanced_system(plan);
    CHECK(validate_balanced(system).all_pass());
    for (const ClosedInterval& piece : system.level_pieces(1)) {
        CHECK(plan.ambient.contains(piece));
    }
}
