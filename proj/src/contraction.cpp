#include "bcs/contraction.hpp"

#include <algorithm>

#include "bcs/errors.hpp"

namespace bcs {

namespace {

Int product_through(const std::vector<long long>& branching, int m) {
    Int p = 1;
    for (int k = 0; k < m; ++k) p *= branching[k];
    return p;
}

Rational abs_rational(const Rational& x) { return x < 0 ? Rational(-x) : x; }

}  // namespace

FiniteMap FiniteMap::from_points(std::vector<std::pair<Rational, Rational>> pts,
                                 std::string provenance) {
    std::sort(pts.begin(), pts.end(),
              [](const std::pair<Rational, Rational>& a,
                 const std::pair<Rational, Rational>& b) { return a.first < b.first; });
    for (std::size_t k = 1; k < pts.size(); ++k) {
        if (pts[k].first == pts[k - 1].first) {
            throw MalformedMap("duplicate domain point " + to_string(pts[k].first));
        }
    }
    FiniteMap map;
    map.points = std::move(pts);
    map.provenance = std::move(provenance);
    return map;
}

ContractionCheck check_weak_contraction(const FiniteMap& map) {
    if (map.points.empty()) throw MalformedMap("map has no sample points");
    ContractionCheck result;
    const auto& p = map.points;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            const Rational domain_gap = abs_rational(p[j].first - p[i].first);
            const Rational image_gap = abs_rational(p[j].second - p[i].second);
            if (image_gap >= domain_gap) {
                result.pass = false;
                result.i = i;
                result.j = j;
                result.xi = p[i].first;
                result.xj = p[j].first;
                result.image_gap = image_gap;
                result.domain_gap = domain_gap;
                return result;
            }
        }
    }
    return result;
}

IntersectionReport analyze_child_intersections(const BalancedSystem& system,
                                               const FiniteMap& map,
                                               const MultiIndex& target, int m) {
    const ContractionCheck gate = check_weak_contraction(map);
    if (!gate.pass) {
        throw WeakContractionViolation(
            "samples " + to_string(gate.xi) + " and " + to_string(gate.xj) +
            " move apart under the map (image gap " + to_string(gate.image_gap) +
            " >= domain gap " + to_string(gate.domain_gap) + ")");
    }
    if (m % 2 == 0 || m < 1) {
        throw IndexMismatch("level m = " + std::to_string(m) + " is not odd");
    }
    if (m >= system.depth()) {
        throw IndexMismatch("level m = " + std::to_string(m) +
                            " leaves no room for level m+1 at depth " +
                            std::to_string(system.depth()));
    }
    if (!system.phi().has(m) || !(system.phi().at(m) == target)) {
        throw IndexMismatch("the index table does not send " + std::to_string(m) +
                            " to " + target.str());
    }

    IntersectionReport report;
    report.target = target;
    report.m = m;

    const auto children = elementary_pieces(system, m + 1, target);
    long long outside = 0;
    for (const auto& [idx, piece] : elementary_pieces(system, m)) {
        if (target.is_prefix_of(idx)) continue;
        ++outside;

        bool any = false;
        Rational img_lo, img_hi;
        for (const auto& [x, fx] : map.points) {
            if (!piece.contains(x)) continue;
            if (!any) {
                img_lo = fx;
                img_hi = fx;
                any = true;
            } else {
                if (fx < img_lo) img_lo = fx;
                if (fx > img_hi) img_hi = fx;
            }
        }
        if (!any) {
            throw InsufficientSamples("no sample point inside level-" + std::to_string(m) +
                                      " piece " + idx.str());
        }

        const ClosedInterval image_hull(img_lo, img_hi);
        int count = 0;
        for (const auto& [child_idx, child] : children) {
            (void)child_idx;
            if (child.intersects(image_hull)) ++count;
        }
        report.child_hits.emplace_back(idx, count);
        if (count > report.max_count) report.max_count = count;
    }

    report.measure_bound =
        Rational(Int(outside), product_through(system.plan().branching, m + 1));
    report.refutation = report.max_count >= 2;
    return report;
}

Rational bound_overlap_measure(const BalancedSystem& system,
                               const IntersectionReport& report) {
    if (report.max_count >= 2) {
        throw NotCertifiable("an image hull meets " + std::to_string(report.max_count) +
                             " children of " + report.target.str() +
                             "; the separation property or the contraction check "
                             "stands refuted and no bound follows");
    }
    const int n = report.target.length();
    if (system.plan().strict_growth && n < system.depth()) {
        const Rational ceiling(1, system.plan().branching[n]);
        if (report.measure_bound > ceiling) {
            throw DomainError("report inconsistent with the system: bound " +
                              to_string(report.measure_bound) + " exceeds 1/a_" +
                              std::to_string(n + 1) + " = " + to_string(ceiling));
        }
    }
    return report.measure_bound;
}

std::vector<Rational> find_fixed_points(const FiniteMap& map) {
    std::vector<Rational> fixed;
    for (const auto& [x, fx] : map.points) {
        if (fx == x) fixed.push_back(x);
    }
    return fixed;
}

std::vector<std::pair<MultiIndex, int>> admissible_intersection_pairs(
    const BalancedSystem& system) {
    std::vector<std::pair<MultiIndex, int>> pairs;
    for (int m = 1; m < system.depth(); m += 2) {
        if (system.phi().has(m)) pairs.emplace_back(system.phi().at(m), m);
    }
    return pairs;
}

std::vector<AnBoundRow> an_bound_table(const BalancedSystem& system) {
    if (!system.plan().strict_growth) {
        throw GrowthModeRequired(
            "the 1/n bound table needs the strict growth condition; this plan was "
            "validated in relaxed mode");
    }
    std::vector<AnBoundRow> rows;
    const auto& branching = system.plan().branching;
    Int product = 1;
    for (int n = 1; n < system.depth(); ++n) {
        product *= branching[n - 1];
        AnBoundRow row;
        row.n = n;
        row.bound = Rational(product, Int(branching[n]));
        row.one_over_n = Rational(1, n);
        row.within = row.bound <= row.one_over_n;
        rows.push_back(std::move(row));
    }
    return rows;
}

DecompositionReport check_overlap_decomposition(const BalancedSystem& system,
                                                const FiniteMap& map, int depth_n) {
    const ContractionCheck gate = check_weak_contraction(map);
    if (!gate.pass) {
        throw WeakContractionViolation(
            "samples " + to_string(gate.xi) + " and " + to_string(gate.xj) +
            " move apart under the map (image gap " + to_string(gate.image_gap) +
            " >= domain gap " + to_string(gate.domain_gap) + ")");
    }
    if (depth_n < 1 || depth_n > system.depth()) {
        throw LevelOutOfRange("decomposition depth " + std::to_string(depth_n) +
                              " outside 1.." + std::to_string(system.depth()));
    }

    const auto& branching = system.plan().branching;
    const auto& deepest = system.level_pieces(system.depth());

    // suffix[l] = a_{l+1} * ... * a_N: deepest-level rank divided by suffix[l]
    // is the rank of the level-l ancestor.
    std::vector<long long> suffix(static_cast<std::size_t>(depth_n) + 1, 1);
    for (int l = depth_n; l >= 1; --l) {
        long long s = 1;
        for (int k = l; k < system.depth(); ++k) s *= branching[k];
        suffix[l] = s;
    }

    DecompositionReport report;
    for (const auto& [x, fx] : map.points) {
        DecompositionRow row;
        row.x = x;
        row.fx = fx;
        if (fx == x) {
            row.branch = DecompositionBranch::fixed;
            report.rows.push_back(std::move(row));
            continue;
        }

        long long deep_rank = -1;
        for (std::size_t q = 0; q < deepest.size(); ++q) {
            if (deepest[q].contains(fx)) {
                deep_rank = static_cast<long long>(q);
                break;
            }
        }
        if (deep_rank < 0) {
            row.branch = DecompositionBranch::outside_image;
            report.rows.push_back(std::move(row));
            continue;
        }

        int separating = 0;
        for (int l = 1; l <= depth_n; ++l) {
            const long long rank_l = deep_rank / suffix[l];
            const ClosedInterval& ancestor = system.level_pieces(l)[rank_l];
            if (!ancestor.contains(x)) {
                if (separating == 0) {
                    separating = l;
                    row.branch = DecompositionBranch::separated;
                    row.level = l;
                    row.piece = level_unrank(branching, l, rank_l);
                }
            } else if (separating != 0) {
                // An ancestor deeper than the separating level regained x:
                // separation failed to persist (possible only for systems
                // that are not actually nested).
                report.monotone_ok = false;
            }
        }
        if (separating == 0) {
            row.branch = DecompositionBranch::depth_exhausted;
            row.level = depth_n;
            row.piece = level_unrank(branching, depth_n, deep_rank / suffix[depth_n]);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace bcs
