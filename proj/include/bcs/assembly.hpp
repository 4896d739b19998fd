#pragma once

#include <string>
#include <vector>

#include "bcs/gauge.hpp"
#include "bcs/measure.hpp"

// Enumerates the rationals without repetition and assembles the prefix of
// the translated family: entry n takes the distinguished level-n piece
// (the all-ones index), translates its deepest-level descendants by the
// n-th rational, and carries the declared measure contribution
// 1/(a_1..a_n). The partial bound sum_{n<=count} 1/(a_1..a_n) is exact and
// certified against the geometric ceiling sum_{n<=count} 2^-n.

namespace bcs {

/// Stateful enumeration of all rationals, each exactly once:
/// 0, then the Calkin-Wilf positives q -> 1/(2*floor(q) - q + 1)
/// interleaved with their negatives. next() never repeats a value.
class RationalEnumeration {
public:
    Rational next();

private:
    int phase_ = 0;          // 0: emit 0; 1: emit positive; 2: emit negative
    Rational current_ = 1;   // next positive to emit
};

/// First `count` values of the enumeration. DomainError when count < 1.
/// The sequence begins 0, 1, -1, 1/2, -1/2.
std::vector<Rational> enumerate_rationals(int count);

struct TranslatedEntry {
    int n = 0;                     // 1-based position in the family
    MultiIndex star_piece;         // the all-ones index of length n
    Rational offset;               // the n-th rational of the enumeration
    // Deepest-level descendants of star_piece, translated by offset.
    std::vector<ClosedInterval> intervals;
    Rational expected_measure;     // declared contribution 1/(a_1..a_n)
};

struct TranslatedFamily {
    std::vector<TranslatedEntry> entries;
    Rational partial_measure_bound;  // sum of declared contributions
};

/// Builds the first `count` entries over the given system. Entry n uses
/// level n, so count must be at most the system depth (LevelOutOfRange
/// otherwise; DomainError when count < 1).
TranslatedFamily build_f0_prefix(const BalancedSystem& system, int count);

struct F0EntryCheck {
    int n = 0;
    Rational recomputed;  // sum of h(diam) over the entry's intervals
    Rational declared;
    bool match = false;
};

struct F0BoundReport {
    std::vector<F0EntryCheck> entries;
    Rational recomputed_total;
    Rational declared_total;
    Rational geometric_ceiling;  // 1 - 2^-count
    bool pass = false;
};

/// Recomputes every entry's contribution from its own interval data —
/// the cover cost sum of h(diam) over the translated descendants — and
/// compares with the declared values and the partial geometric ceiling.
/// A diameter below the gauge's resolution floor means the family and
/// gauge disagree about depth: GaugeMismatch.
F0BoundReport f0_measure_bound(const TranslatedFamily& family,
                               const GaugeFunction& gauge);

}  // namespace bcs
