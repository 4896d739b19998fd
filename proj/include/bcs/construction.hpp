#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcs/interval.hpp"

namespace bcs {

/// Recipe for a finite-depth nested interval system.
///
/// In strict growth mode the branching sequence must satisfy a_1 >= 2 and
/// a_{n+1} >= n * a_1*...*a_n; relaxed mode only demands a_n >= 2. The
/// overlap-bound machinery needs strict mode (its 1/n decay comes from the
/// growth condition); measure-only work can run relaxed at greater depth.
struct ConstructionPlan {
    std::vector<long long> branching;  // a_1 .. a_N
    ClosedInterval ambient{Rational(0), Rational(1)};
    bool strict_growth = true;

    int depth() const { return static_cast<int>(branching.size()); }

    /// Throws InvalidPlan when the mode's growth condition fails, the
    /// ambient interval is degenerate, or the total piece count would
    /// exceed the builder's capacity (2^24 pieces).
    void validate() const;

    bool operator==(const ConstructionPlan&) const = default;
};

/// Coordinates (i_1, ..., i_n), 1-based, i_k within the branching bounds.
struct MultiIndex {
    std::vector<int> v;

    int length() const { return static_cast<int>(v.size()); }
    bool is_prefix_of(const MultiIndex& other) const;
    std::string str() const;  // "1.2.1"

    auto operator<=>(const MultiIndex&) const = default;
};

/// Length-then-lex position of `idx` among all indices of equal length,
/// i.e. its mixed-radix rank within its level. 0-based.
long long level_rank(const std::vector<long long>& branching, const MultiIndex& idx);
MultiIndex level_unrank(const std::vector<long long>& branching, int level, long long rank);

/// Finite table n -> Phi(n) for odd n, a prefix of one fixed total order on
/// the multi-index set, so any two tables for the same plan agree where both
/// are defined.
class IndexFunction {
public:
    IndexFunction() = default;
    explicit IndexFunction(std::map<int, MultiIndex> table);

    bool has(int odd_n) const { return table_.count(odd_n) > 0; }
    const MultiIndex& at(int odd_n) const;
    const std::map<int, MultiIndex>& table() const { return table_; }

    bool operator==(const IndexFunction&) const = default;

private:
    std::map<int, MultiIndex> table_;
};

/// Phi(2j-1) = j-th multi-index in length-then-lex order. The table covers
/// odd n <= max_odd_n. Verifies length(Phi(n)) <= n (cannot fail for
/// branching >= 2; asserted anyway -> IndexFunctionInfeasible).
IndexFunction canonical_index_function(const ConstructionPlan& plan, int max_odd_n);

/// Table sized for building: odd n < depth.
IndexFunction canonical_index_function(const ConstructionPlan& plan);

/// Finite-depth nested family of closed rational intervals: branching a_n,
/// separation radii b_n, one interval per multi-index, and the odd-level
/// index table driving the extra separation property. Immutable after
/// construction; every operation on it is pure.
class BalancedSystem {
public:
    /// Assembles a system from raw parts, checking only structural shape
    /// (level piece counts, positive radii, index-table coverage), not the
    /// balance properties. Deliberately lets invalid systems through so
    /// the validator has something to reject.
    static BalancedSystem from_parts(ConstructionPlan plan,
                                     std::vector<Rational> b,
                                     IndexFunction phi,
                                     std::vector<std::vector<ClosedInterval>> levels);

    const ConstructionPlan& plan() const { return plan_; }
    int depth() const { return plan_.depth(); }
    const std::vector<Rational>& separations() const { return b_; }
    const Rational& b(int level) const;  // 1-based
    const IndexFunction& phi() const { return phi_; }

    long long level_count(int level) const;  // product a_1..a_level
    const ClosedInterval& piece(const MultiIndex& idx) const;
    const std::vector<ClosedInterval>& level_pieces(int level) const;  // lex order

    bool operator==(const BalancedSystem&) const = default;

private:
    ConstructionPlan plan_;
    std::vector<Rational> b_;
    IndexFunction phi_;
    std::vector<std::vector<ClosedInterval>> levels_;
};

/// Deterministic recursive construction. Children are placed on uniform
/// rational grids: at odd parent levels, first every parent inside the
/// Phi-designated piece gets a full-width spread, then each remaining
/// parent has its centers compressed into a sub-interval of width delta/2,
/// delta being the minimum pairwise distance among the already placed
/// centers. b_{n+1} is then the largest power of 1/2 keeping all separation
/// constraints strict, and each child is the closed ball of radius
/// b_{n+1}/2 around its center, so diameters are exactly b_{n+1}.
BalancedSystem build_balanced_system(const ConstructionPlan& plan);

struct PropertyCheck {
    std::string property;
    bool pass = true;
    std::string witness;  // empty when pass
};

struct ValidationReport {
    std::vector<PropertyCheck> checks;
    bool all_pass() const;
    const PropertyCheck& check(const std::string& property) const;
};

/// Re-checks every balance property against the stored intervals alone:
/// growth mode arithmetic, nesting, diameter bounds, exhaustive pairwise
/// same-level separation, the odd-level separation property, monotone decay
/// 2b_{n+1} < b_n, and the exact-diameter build guarantee. Failures are
/// data in the report, each with a witness.
ValidationReport validate_balanced(const BalancedSystem& system);

/// All level-n pieces (optionally restricted to descendants of `within`),
/// paired with their indices, in lex = position order.
std::vector<std::pair<MultiIndex, ClosedInterval>> elementary_pieces(
    const BalancedSystem& system, int level,
    const std::optional<MultiIndex>& within = std::nullopt);

/// Left endpoints of the level-n pieces, in position order. The left
/// endpoint is the deterministic representative of a piece.
std::vector<Rational> level_representatives(const BalancedSystem& system, int level);

}  // namespace bcs
