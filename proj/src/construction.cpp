#include "bcs/construction.hpp"

#include <algorithm>
#include <utility>

namespace bcs {

namespace {

// scale is a common multiple of x's denominator, so x*scale is an integer.
Int scaled_to_int(const Rational& x, const Int& scale) {
    const Rational v = x * Rational(scale);
    return boost::multiprecision::numerator(v);
}

}  // namespace

void ConstructionPlan::validate() const {
    if (branching.empty()) throw InvalidPlan("branching sequence is empty");
    if (!(ambient.diameter() > 0)) {
        throw InvalidPlan("ambient interval is degenerate: [" + to_string(ambient.lo()) +
                          ", " + to_string(ambient.hi()) + "]");
    }
    if (strict_growth) {
        if (branching.front() < 2) {
            throw InvalidPlan("strict growth requires a_1 >= 2, got a_1 = " +
                              std::to_string(branching.front()));
        }
        Int product = branching.front();
        for (std::size_t i = 1; i < branching.size(); ++i) {
            const Int required = Int(i) * product;
            if (Int(branching[i]) < required) {
                throw InvalidPlan("strict growth requires a_" + std::to_string(i + 1) +
                                  " >= " + std::to_string(i) + " * a_1..a_" +
                                  std::to_string(i) + " = " + required.str() +
                                  ", got " + std::to_string(branching[i]));
            }
            product *= branching[i];
        }
    } else {
        for (std::size_t i = 0; i < branching.size(); ++i) {
            if (branching[i] < 2) {
                throw InvalidPlan("relaxed growth requires a_n >= 2, got a_" +
                                  std::to_string(i + 1) + " = " +
                                  std::to_string(branching[i]));
            }
        }
    }
    Int total = 1;
    for (const long long a : branching) {
        total *= a;
        if (total > (Int(1) << 24)) {
            throw InvalidPlan("deepest level would hold " + total.str() +
                              " pieces, beyond the 2^24 capacity");
        }
    }
}

bool MultiIndex::is_prefix_of(const MultiIndex& other) const {
    if (v.size() > other.v.size()) return false;
    return std::equal(v.begin(), v.end(), other.v.begin());
}

std::string MultiIndex::str() const {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k > 0) out += '.';
        out += std::to_string(v[k]);
    }
    return out;
}

long long level_rank(const std::vector<long long>& branching, const MultiIndex& idx) {
    if (idx.length() == 0) throw DomainError("empty multi-index");
    if (idx.length() > static_cast<int>(branching.size())) {
        throw LevelOutOfRange("multi-index " + idx.str() + " has length " +
                              std::to_string(idx.length()) + ", deeper than level " +
                              std::to_string(branching.size()));
    }
    long long rank = 0;
    for (int k = 0; k < idx.length(); ++k) {
        const int coord = idx.v[k];
        if (coord < 1 || coord > branching[k]) {
            throw DomainError("coordinate " + std::to_string(coord) + " at position " +
                              std::to_string(k + 1) + " of " + idx.str() +
                              " is outside 1.." + std::to_string(branching[k]));
        }
        rank = rank * branching[k] + (coord - 1);
    }
    return rank;
}

MultiIndex level_unrank(const std::vector<long long>& branching, int level, long long rank) {
    if (level < 1 || level > static_cast<int>(branching.size())) {
        throw LevelOutOfRange("level " + std::to_string(level) + " outside 1.." +
                              std::to_string(branching.size()));
    }
    long long count = 1;
    for (int k = 0; k < level; ++k) count *= branching[k];
    if (rank < 0 || rank >= count) {
        throw DomainError("rank " + std::to_string(rank) + " outside 0.." +
                          std::to_string(count - 1) + " at level " + std::to_string(level));
    }
    MultiIndex idx;
    idx.v.resize(level);
    for (int k = level - 1; k >= 0; --k) {
        idx.v[k] = static_cast<int>(rank % branching[k]) + 1;
        rank /= branching[k];
    }
    return idx;
}

IndexFunction::IndexFunction(std::map<int, MultiIndex> table) : table_(std::move(table)) {
    for (const auto& [n, idx] : table_) {
        if (n < 1 || n % 2 == 0) {
            throw DomainError("index table defined at non-odd position n = " +
                              std::to_string(n));
        }
        if (idx.length() == 0) throw DomainError("empty multi-index at n = " + std::to_string(n));
        if (idx.length() > n) {
            throw IndexFunctionInfeasible("value at n = " + std::to_string(n) +
                                          " has length " + std::to_string(idx.length()) +
                                          " > n");
        }
    }
}

const MultiIndex& IndexFunction::at(int odd_n) const {
    const auto it = table_.find(odd_n);
    if (it == table_.end()) {
        throw DomainError("index table has no entry at n = " + std::to_string(odd_n));
    }
    return it->second;
}

namespace {

// j-th multi-index (1-based) in length-then-lexicographic order.
MultiIndex length_lex_at(const std::vector<long long>& branching, long long j) {
    int level = 1;
    long long level_size = branching[0];
    while (j > level_size) {
        j -= level_size;
        if (level >= static_cast<int>(branching.size())) {
            throw DomainError("length-lex position exceeds the plan's finite index set");
        }
        level_size *= branching[level];
        ++level;
    }
    return level_unrank(branching, level, j - 1);
}

}  // namespace

IndexFunction canonical_index_function(const ConstructionPlan& plan, int max_odd_n) {
    plan.validate();
    std::map<int, MultiIndex> table;
    for (int n = 1; n <= max_odd_n; n += 2) {
        MultiIndex idx = length_lex_at(plan.branching, (n + 1) / 2);
        if (idx.length() > n) {
            throw IndexFunctionInfeasible("length-lex enumeration produced a value of length " +
                                          std::to_string(idx.length()) + " at n = " +
                                          std::to_string(n));
        }
        table.emplace(n, std::move(idx));
    }
    return IndexFunction(std::move(table));
}

IndexFunction canonical_index_function(const ConstructionPlan& plan) {
    return canonical_index_function(plan, plan.depth() - 1);
}

BalancedSystem BalancedSystem::from_parts(ConstructionPlan plan, std::vector<Rational> b,
                                          IndexFunction phi,
                                          std::vector<std::vector<ClosedInterval>> levels) {
    plan.validate();
    const int depth = plan.depth();
    if (static_cast<int>(b.size()) != depth) {
        throw DomainError("expected " + std::to_string(depth) + " separation radii, got " +
                          std::to_string(b.size()));
    }
    for (const Rational& r : b) {
        if (!(r > 0)) throw DomainError("separation radii must be positive, got " + to_string(r));
    }
    if (static_cast<int>(levels.size()) != depth) {
        throw DomainError("expected " + std::to_string(depth) + " levels of pieces, got " +
                          std::to_string(levels.size()));
    }
    long long count = 1;
    for (int n = 0; n < depth; ++n) {
        count *= plan.branching[n];
        if (static_cast<long long>(levels[n].size()) != count) {
            throw DomainError("level " + std::to_string(n + 1) + " must hold " +
                              std::to_string(count) + " pieces, got " +
                              std::to_string(levels[n].size()));
        }
    }
    for (int n = 1; n < depth; n += 2) {
        if (!phi.has(n)) {
            throw DomainError("index table is missing the entry for odd level " +
                              std::to_string(n));
        }
        level_rank(plan.branching, phi.at(n));  // coordinate bounds
    }
    BalancedSystem system;
    system.plan_ = std::move(plan);
    system.b_ = std::move(b);
    system.phi_ = std::move(phi);
    system.levels_ = std::move(levels);
    return system;
}

const Rational& BalancedSystem::b(int level) const {
    if (level < 1 || level > depth()) {
        throw LevelOutOfRange("separation radius index " + std::to_string(level) +
                              " outside 1.." + std::to_string(depth()));
    }
    return b_[level - 1];
}

long long BalancedSystem::level_count(int level) const {
    if (level < 1 || level > depth()) {
        throw LevelOutOfRange("level " + std::to_string(level) + " outside 1.." +
                              std::to_string(depth()));
    }
    return static_cast<long long>(levels_[level - 1].size());
}

const ClosedInterval& BalancedSystem::piece(const MultiIndex& idx) const {
    const long long rank = level_rank(plan_.branching, idx);
    return levels_[idx.length() - 1][rank];
}

const std::vector<ClosedInterval>& BalancedSystem::level_pieces(int level) const {
    if (level < 1 || level > depth()) {
        throw LevelOutOfRange("level " + std::to_string(level) + " outside 1.." +
                              std::to_string(depth()));
    }
    return levels_[level - 1];
}

BalancedSystem build_balanced_system(const ConstructionPlan& plan) {
    plan.validate();
    const int depth = plan.depth();
    IndexFunction phi = canonical_index_function(plan);

    std::vector<std::vector<ClosedInterval>> levels;
    std::vector<Rational> b;
    levels.reserve(depth);
    b.reserve(depth);

    std::vector<ClosedInterval> parents{plan.ambient};
    for (int parent_level = 0; parent_level < depth; ++parent_level) {
        const long long a = plan.branching[parent_level];
        const long long parent_count = static_cast<long long>(parents.size());

        // Rank range of the parents that receive the full-width spread. At
        // even parent levels that is everyone; at odd levels only the
        // descendants of the designated piece.
        long long inside_begin = 0;
        long long inside_end = parent_count;
        if (parent_level % 2 == 1) {
            const MultiIndex& designated = phi.at(parent_level);
            long long suffix = 1;
            for (int l = designated.length(); l < parent_level; ++l) suffix *= plan.branching[l];
            const long long r0 = level_rank(plan.branching, designated);
            inside_begin = r0 * suffix;
            inside_end = (r0 + 1) * suffix;
        }

        // Pass 1: full-width spread inside. Children sit on the uniform
        // grid lo + d*i/(a+1), i = 1..a, so spacing and boundary margin are
        // both d/(a+1).
        std::vector<Rational> centers(parent_count * a);
        for (long long p = inside_begin; p < inside_end; ++p) {
            const Rational lo = parents[p].lo();
            const Rational d = parents[p].diameter();
            for (long long i = 1; i <= a; ++i) {
                centers[p * a + (i - 1)] = lo + d * Rational(i, a + 1);
            }
        }

        // delta = minimum pairwise distance among the centers placed so
        // far. They are in ascending position order, so adjacent gaps
        // suffice.
        Rational delta;
        bool have_delta = false;
        for (long long q = inside_begin * a + 1; q < inside_end * a; ++q) {
            const Rational gap = centers[q] - centers[q - 1];
            if (!have_delta || gap < delta) {
                delta = gap;
                have_delta = true;
            }
        }

        // Pass 2: remaining parents get their centers compressed into a
        // centered strip of width delta/2.
        const bool has_outside = inside_begin > 0 || inside_end < parent_count;
        if (has_outside) {
            const Rational strip = delta / 2;
            for (long long p = 0; p < parent_count; ++p) {
                if (p >= inside_begin && p < inside_end) continue;
                const Rational mid = (parents[p].lo() + parents[p].hi()) / 2;
                const Rational left = mid - strip / 2;
                for (long long i = 1; i <= a; ++i) {
                    centers[p * a + (i - 1)] = left + strip * Rational(i - 1, a - 1);
                }
            }
        }

        // Radius selection: the largest power of 1/2 strictly below every
        // constraint bound, so all the required inequalities are strict.
        //   same-level separation: r < (min adjacent center gap)/3
        //   nesting with margin:   r < 2*(min distance center-to-boundary)
        //   radius decay:          r < b_parent/2
        //   odd-level separation:  r < (inside spacing - outside spread)/2
        Rational bound;
        bool have_bound = false;
        const auto tighten = [&bound, &have_bound](const Rational& candidate) {
            if (!have_bound || candidate < bound) {
                bound = candidate;
                have_bound = true;
            }
        };

        for (long long q = 1; q < parent_count * a; ++q) {
            const Rational gap = centers[q] - centers[q - 1];
            tighten(gap / 3);
        }
        for (long long p = 0; p < parent_count; ++p) {
            const Rational left_margin = centers[p * a] - parents[p].lo();
            const Rational right_margin = parents[p].hi() - centers[p * a + (a - 1)];
            tighten(2 * left_margin);
            tighten(2 * right_margin);
        }
        if (parent_level >= 1) tighten(b[parent_level - 1] / 2);
        if (parent_level % 2 == 1 && has_outside) {
            Rational inside_spacing;
            bool have_spacing = false;
            for (long long p = inside_begin; p < inside_end; ++p) {
                for (long long i = 1; i < a; ++i) {
                    const Rational gap = centers[p * a + i] - centers[p * a + i - 1];
                    if (!have_spacing || gap < inside_spacing) {
                        inside_spacing = gap;
                        have_spacing = true;
                    }
                }
            }
            Rational outside_spread = 0;
            for (long long p = 0; p < parent_count; ++p) {
                if (p >= inside_begin && p < inside_end) continue;
                const Rational spread = centers[p * a + (a - 1)] - centers[p * a];
                if (spread > outside_spread) outside_spread = spread;
            }
            tighten((inside_spacing - outside_spread) / 2);
        }

        const Rational radius = largest_power_of_half_below(bound);
        const Rational half = radius / 2;
        std::vector<ClosedInterval> level;
        level.reserve(parent_count * a);
        for (const Rational& c : centers) level.emplace_back(c - half, c + half);
        b.push_back(radius);
        levels.push_back(std::move(level));
        parents = levels.back();
    }

    return BalancedSystem::from_parts(plan, std::move(b), std::move(phi), std::move(levels));
}

bool ValidationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const PropertyCheck& c) { return c.pass; });
}

const PropertyCheck& ValidationReport::check(const std::string& property) const {
    for (const PropertyCheck& c : checks) {
        if (c.property == property) return c;
    }
    throw DomainError("no validation check named \"" + property + "\"");
}

ValidationReport validate_balanced(const BalancedSystem& system) {
    const ConstructionPlan& plan = system.plan();
    const int depth = system.depth();
    ValidationReport report;

    // Growth arithmetic re-derived from the raw branching numbers.
    {
        PropertyCheck c{"growth", true, ""};
        const auto& a = plan.branching;
        if (a.empty()) {
            c.pass = false;
            c.witness = "empty branching sequence";
        } else if (plan.strict_growth) {
            if (a.front() < 2) {
                c.pass = false;
                c.witness = "a_1 = " + std::to_string(a.front()) + " < 2";
            }
            Int product = a.front();
            for (std::size_t i = 1; c.pass && i < a.size(); ++i) {
                const Int required = Int(i) * product;
                if (Int(a[i]) < required) {
                    c.pass = false;
                    c.witness = "a_" + std::to_string(i + 1) + " = " + std::to_string(a[i]) +
                                " < " + std::to_string(i) + "*a_1..a_" + std::to_string(i) +
                                " = " + required.str();
                }
                product *= a[i];
            }
        } else {
            for (std::size_t i = 0; c.pass && i < a.size(); ++i) {
                if (a[i] < 2) {
                    c.pass = false;
                    c.witness = "a_" + std::to_string(i + 1) + " = " + std::to_string(a[i]) +
                                " < 2";
                }
            }
        }
        report.checks.push_back(std::move(c));
    }

    // Nesting: every piece lies inside the piece whose index is its prefix.
    {
        PropertyCheck c{"nesting", true, ""};
        for (int level = 2; c.pass && level <= depth; ++level) {
            const auto& pieces = system.level_pieces(level);
            const auto& parents = system.level_pieces(level - 1);
            const long long a = plan.branching[level - 1];
            for (long long q = 0; q < static_cast<long long>(pieces.size()); ++q) {
                if (!parents[q / a].contains(pieces[q])) {
                    c.pass = false;
                    c.witness = "piece " + level_unrank(plan.branching, level, q).str() +
                                " = [" + to_string(pieces[q].lo()) + ", " +
                                to_string(pieces[q].hi()) + "] escapes its parent";
                    break;
                }
            }
        }
        report.checks.push_back(std::move(c));
    }

    // Diameter bound diam <= b_n at every level.
    {
        PropertyCheck c{"diameter_bound", true, ""};
        for (int level = 1; c.pass && level <= depth; ++level) {
            const auto& pieces = system.level_pieces(level);
            const Rational& bn = system.b(level);
            for (long long q = 0; q < static_cast<long long>(pieces.size()); ++q) {
                const Rational d = pieces[q].diameter();
                if (d > bn) {
                    c.pass = false;
                    c.witness = "piece " + level_unrank(plan.branching, level, q).str() +
                                " has diameter " + to_string(d) + " > b_" +
                                std::to_string(level) + " = " + to_string(bn);
                    break;
                }
            }
        }
        report.checks.push_back(std::move(c));
    }

    // Same-level separation, exhaustive over all pairs. Each level's
    // endpoints are moved onto one common denominator first so the O(M^2)
    // loop runs on plain integers.
    {
        PropertyCheck c{"separation", true, ""};
        for (int level = 1; c.pass && level <= depth; ++level) {
            const auto& pieces = system.level_pieces(level);
            const long long m = static_cast<long long>(pieces.size());
            const Rational threshold = 2 * system.b(level);
            Int scale = boost::multiprecision::denominator(threshold);
            for (const ClosedInterval& piece : pieces) {
                scale = boost::multiprecision::lcm(
                    scale, boost::multiprecision::denominator(piece.lo()));
                scale = boost::multiprecision::lcm(
                    scale, boost::multiprecision::denominator(piece.hi()));
            }
            std::vector<Int> lo(m), hi(m);
            for (long long q = 0; q < m; ++q) {
                lo[q] = scaled_to_int(pieces[q].lo(), scale);
                hi[q] = scaled_to_int(pieces[q].hi(), scale);
            }
            const Int t = scaled_to_int(threshold, scale);
            for (long long i = 0; c.pass && i < m; ++i) {
                for (long long j = i + 1; j < m; ++j) {
                    const Int& lo_max = lo[i] > lo[j] ? lo[i] : lo[j];
                    const Int& hi_min = hi[i] < hi[j] ? hi[i] : hi[j];
                    Int gap = lo_max - hi_min;
                    if (gap <= t) {
                        if (gap < 0) gap = 0;
                        c.pass = false;
                        c.witness = "pieces " + level_unrank(plan.branching, level, i).str() +
                                    " and " + level_unrank(plan.branching, level, j).str() +
                                    " at distance " + to_string(Rational(gap, scale)) +
                                    ", required > 2*b_" + std::to_string(level) + " = " +
                                    to_string(threshold);
                        break;
                    }
                }
            }
        }
        report.checks.push_back(std::move(c));
    }

    // Odd-level separation: children of pieces inside the designated piece
    // must be pairwise farther apart than the widest children-hull of any
    // piece outside it. Membership is decided by interval containment.
    {
        PropertyCheck c{"odd_level_separation", true, ""};
        for (int n = 1; c.pass && n < depth; n += 2) {
            if (!system.phi().has(n)) {
                c.pass = false;
                c.witness = "no index-table entry at odd level " + std::to_string(n);
                break;
            }
            const ClosedInterval& designated = system.piece(system.phi().at(n));
            const auto& parents = system.level_pieces(n);
            const auto& children = system.level_pieces(n + 1);
            const long long a = plan.branching[n];

            bool have_inside = false;
            Rational min_inside;
            long long min_parent = 0, min_s = 0, min_t = 0;
            bool have_outside = false;
            Rational max_hull;
            long long max_parent = 0;
            for (long long p = 0; p < static_cast<long long>(parents.size()); ++p) {
                if (designated.contains(parents[p])) {
                    for (long long s = 0; s < a; ++s) {
                        for (long long t = s + 1; t < a; ++t) {
                            const Rational d =
                                interval_distance(children[p * a + s], children[p * a + t]);
                            if (!have_inside || d < min_inside) {
                                min_inside = d;
                                min_parent = p;
                                min_s = s;
                                min_t = t;
                                have_inside = true;
                            }
                        }
                    }
                } else {
                    const std::span<const ClosedInterval> kids(children.data() + p * a,
                                                               static_cast<std::size_t>(a));
                    const Rational w = hull_diameter(kids);
                    if (!have_outside || w > max_hull) {
                        max_hull = w;
                        max_parent = p;
                        have_outside = true;
                    }
                }
            }
            if (have_inside && have_outside && !(min_inside > max_hull)) {
                c.pass = false;
                c.witness =
                    "children " + std::to_string(min_s + 1) + " and " +
                    std::to_string(min_t + 1) + " of " +
                    level_unrank(plan.branching, n, min_parent).str() + " at distance " +
                    to_string(min_inside) + ", not above the children-hull diameter " +
                    to_string(max_hull) + " of " +
                    level_unrank(plan.branching, n, max_parent).str();
            }
        }
        report.checks.push_back(std::move(c));
    }

    // Monotone decay of the separation radii.
    {
        PropertyCheck c{"radius_decay", true, ""};
        for (int n = 1; c.pass && n < depth; ++n) {
            if (!(2 * system.b(n + 1) < system.b(n))) {
                c.pass = false;
                c.witness = "2*b_" + std::to_string(n + 1) + " = " +
                            to_string(2 * system.b(n + 1)) + " is not below b_" +
                            std::to_string(n) + " = " + to_string(system.b(n));
            }
        }
        report.checks.push_back(std::move(c));
    }

    // Exact diameters, the extra guarantee of the canonical builder.
    {
        PropertyCheck c{"exact_diameters", true, ""};
        for (int level = 1; c.pass && level <= depth; ++level) {
            const auto& pieces = system.level_pieces(level);
            const Rational& bn = system.b(level);
            for (long long q = 0; q < static_cast<long long>(pieces.size()); ++q) {
                if (pieces[q].diameter() != bn) {
                    c.pass = false;
                    c.witness = "piece " + level_unrank(plan.branching, level, q).str() +
                                " has diameter " + to_string(pieces[q].diameter()) +
                                " instead of b_" + std::to_string(level) + " = " +
                                to_string(bn);
                    break;
                }
            }
        }
        report.checks.push_back(std::move(c));
    }

    return report;
}

std::vector<std::pair<MultiIndex, ClosedInterval>> elementary_pieces(
    const BalancedSystem& system, int level, const std::optional<MultiIndex>& within) {
    if (level < 1 || level > system.depth()) {
        throw LevelOutOfRange("level " + std::to_string(level) + " outside 1.." +
                              std::to_string(system.depth()));
    }
    const auto& branching = system.plan().branching;
    long long begin = 0;
    long long end = system.level_count(level);
    if (within.has_value()) {
        if (within->length() > level) {
            throw LevelOutOfRange("restriction " + within->str() + " has length " +
                                  std::to_string(within->length()) + " > level " +
                                  std::to_string(level));
        }
        const long long r0 = level_rank(branching, *within);
        long long suffix = 1;
        for (int l = within->length(); l < level; ++l) suffix *= branching[l];
        begin = r0 * suffix;
        end = begin + suffix;
    }
    std::vector<std::pair<MultiIndex, ClosedInterval>> out;
    out.reserve(end - begin);
    const auto& pieces = system.level_pieces(level);
    for (long long q = begin; q < end; ++q) {
        out.emplace_back(level_unrank(branching, level, q), pieces[q]);
    }
    return out;
}

std::vector<Rational> level_representatives(const BalancedSystem& system, int level) {
    const auto& pieces = system.level_pieces(level);
    std::vector<Rational> out;
    out.reserve(pieces.size());
    for (const ClosedInterval& p : pieces) out.push_back(p.lo());
    return out;
}

}  // namespace bcs
