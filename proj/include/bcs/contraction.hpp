#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcs/measure.hpp"

// Validates sampled candidate weak contractions and verifies the overlap
// machinery: the at-most-one-child intersection property at admissible
// (target, m) pairs, the certified per-target and aggregated overlap
// bounds, and the fixed-point / separation decomposition of sampled pairs.
// The vanishing of the overlap measure at infinite depth is rendered here
// as the certified bound sequence (a_1..a_n)/a_{n+1} <= 1/n over the
// levels the finite system resolves.

namespace bcs {

/// A candidate weak contraction given as finitely many sampled pairs
/// (x, f(x)), stored sorted by x. Finite samples make the strict pairwise
/// contraction property decidable exactly.
struct FiniteMap {
    std::vector<std::pair<Rational, Rational>> points;  // sorted by first
    std::string provenance;

    /// Sorts by x; throws MalformedMap on duplicate domain points.
    static FiniteMap from_points(std::vector<std::pair<Rational, Rational>> pts,
                                 std::string provenance = {});
};

struct ContractionCheck {
    bool pass = true;
    // First violating pair in sorted order, with the compared distances.
    std::size_t i = 0, j = 0;
    Rational xi, xj, image_gap, domain_gap;
};

/// Checks |f(x_i) - f(x_j)| < |x_i - x_j| for every pair, exact and strict.
ContractionCheck check_weak_contraction(const FiniteMap& map);

/// Per-outside-piece child-hit counts for one admissible (target, m) pair.
/// max_count >= 2 is a refutation witness against either the system's
/// odd-level separation property or the map's validation, not an error.
struct IntersectionReport {
    MultiIndex target;
    int m = 0;
    std::vector<std::pair<MultiIndex, int>> child_hits;  // per outside level-m piece
    int max_count = 0;
    Rational measure_bound;  // (#outside pieces) / (a_1..a_{m+1})
    bool refutation = false;
};

/// For each level-m piece E outside the target: hull of the sampled images
/// of E's samples, then the count of level-(m+1) descendants of the target
/// meeting that hull. Preconditions: the map passes check_weak_contraction
/// (else WeakContractionViolation), m odd and < depth with Phi(m) = target
/// (else IndexMismatch), and at least one sample in every outside piece
/// (else InsufficientSamples).
IntersectionReport analyze_child_intersections(const BalancedSystem& system,
                                               const FiniteMap& map,
                                               const MultiIndex& target, int m);

/// Certified upper bound for the target's overlap piece, from a clean
/// report (max_count <= 1; otherwise NotCertifiable). Equals the report's
/// measure_bound; for strict-growth plans it is checked against the
/// 1/a_{n+1} ceiling, n = length of the target.
Rational bound_overlap_measure(const BalancedSystem& system,
                               const IntersectionReport& report);

/// All sampled x with f(x) = x. A map passing check_weak_contraction can
/// have at most one.
std::vector<Rational> find_fixed_points(const FiniteMap& map);

/// The (target, m) pairs the finite table admits: m odd, m < depth,
/// target = Phi(m).
std::vector<std::pair<MultiIndex, int>> admissible_intersection_pairs(
    const BalancedSystem& system);

struct AnBoundRow {
    int n = 0;
    Rational bound;        // (a_1..a_n)/a_{n+1}
    Rational one_over_n;
    bool within = false;   // bound <= 1/n
};

/// The aggregated overlap-bound table for n = 1..depth-1. The 1/n form
/// needs the strict growth condition; relaxed plans get GrowthModeRequired.
std::vector<AnBoundRow> an_bound_table(const BalancedSystem& system);

enum class DecompositionBranch {
    fixed,            // f(x) = x
    separated,        // a level-n piece contains f(x) but not x
    depth_exhausted,  // x and f(x) share the deepest resolved piece
    outside_image,    // f(x) lands outside every deepest-level piece
};

struct DecompositionRow {
    Rational x, fx;
    DecompositionBranch branch = DecompositionBranch::outside_image;
    int level = 0;       // separating level when branch == separated
    MultiIndex piece;    // the separating piece
};

struct DecompositionReport {
    std::vector<DecompositionRow> rows;
    bool monotone_ok = true;  // separation persists at all deeper levels
};

/// Routes every sampled pair: fixed points to the fixed branch, moved
/// points to the least level whose piece holds f(x) but not x (up to
/// depth_n), and pairs that stay inside one deepest piece to
/// depth_exhausted, which is legitimate whenever |x - f(x)| < b_N.
/// Gate: the map must pass check_weak_contraction.
DecompositionReport check_overlap_decomposition(const BalancedSystem& system,
                                                const FiniteMap& map, int depth_n);

}  // namespace bcs
