#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcs/gauge.hpp"

// Cover costs, counting certificates, and an independent minimal-cover
// oracle. The measure itself is an infimum over arbitrary countable covers
// of the infinite limit set; no finite computation evaluates it directly.
// What is computed here instead: exact canonical upper bounds, optimal
// costs over the class of consecutive-run covers (dynamic programming),
// and counting certificates that lower-bound the cost of arbitrary finite
// covers. For canonically built systems the three agree exactly.

namespace bcs {

/// Finite interval cover of a target (the whole system, or one piece and
/// its descendants). Coverage means: every deepest-level piece of the
/// target meets at least one element.
struct Cover {
    std::vector<ClosedInterval> elements;
    std::optional<MultiIndex> target;  // nullopt = whole system
};

/// Index of the first deepest-level piece of the target no element of the
/// cover touches, or nullopt when coverage holds.
std::optional<MultiIndex> find_uncovered_piece(const BalancedSystem& system,
                                               const Cover& cover);

/// Sum of h(diam U) over the elements, exact. Zero-diameter elements
/// contribute 0. An element with 0 < diam < b_N throws BelowResolution
/// naming the offending element index.
Rational cover_cost(const Cover& cover, const GaugeFunction& h);

/// The cover whose elements are exactly the level-n pieces of the target.
Cover canonical_cover(const BalancedSystem& system, int level,
                      std::optional<MultiIndex> target = std::nullopt);

struct CertificateElement {
    Rational diameter;
    Rational gauge_value;  // h(diameter)
    long long s = 0;       // level-m pieces of the target this element meets
};

/// Counting certificate: cover cost >= claimed measure, provable from the
/// fields alone. Pass requires both the total count inequality
/// (sum s_j >= number of level-m target pieces) and the per-element
/// inequality (h(diam U_j) * a_1..a_m >= s_j).
struct LowerBoundCertificate {
    int m = 0;
    Int level_product;        // a_1 * ... * a_m
    Int target_piece_count;   // level-m pieces of the target
    Rational claimed_measure; // 1/(a_1..a_k) for a length-k target piece, 1 for the whole set
    std::vector<CertificateElement> elements;
    Int total_s;
    Rational bound;           // total_s / level_product
    bool pass = false;
    std::string witness;
};

/// Chooses the least m <= depth with 2b_m < min element diameter, counts
/// s_j exactly, and checks both certificate inequalities. Preconditions:
/// the cover covers the target (else CoverageError with the missed index)
/// and every element has positive diameter (else DegenerateElement). No
/// admissible m -> InsufficientDepth.
LowerBoundCertificate certify_lower_bound(const BalancedSystem& system,
                                          const GaugeFunction& h,
                                          const Cover& cover);

struct RecheckResult {
    bool pass = false;
    std::string detail;
};

/// Re-validates a certificate from its own fields, without the system:
/// totals, bound arithmetic, both inequalities, and
/// sum h_j >= bound >= claimed measure.
RecheckResult recheck_certificate(const LowerBoundCertificate& cert);

struct MinCoverResult {
    Rational cost;
    bool oracle_sound = true;  // all level-m diameters equal b_m exactly
    std::string note;
};

/// Minimum of cover_cost over covers whose elements are hulls of
/// consecutive runs of the level-m pieces (position order), by dynamic
/// programming over run endpoints. Sound as a measure oracle only for
/// canonical builds (exact piece diameters); otherwise the result carries
/// a warning instead of failing.
MinCoverResult min_cover_cost(const BalancedSystem& system, const GaugeFunction& h,
                              int m, std::optional<MultiIndex> target = std::nullopt);

/// Replaces each element by the hull of the consecutive run of level-m
/// pieces it intersects (elements meeting none are dropped). Preserves
/// coverage. Cost does not increase provided each element fully contains
/// every piece it touches; see module notes.
Cover normalize_cover(const BalancedSystem& system, int m, const Cover& cover);

/// lambda(level-n union) = sum of level-n piece diameters (the pieces are
/// pairwise disjoint). Halves or better at each level for balanced systems.
Rational lebesgue_outer_measure(const BalancedSystem& system, int level);

}  // namespace bcs
