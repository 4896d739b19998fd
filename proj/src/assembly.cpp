#include "bcs/assembly.hpp"

#include <set>
#include <utility>

#include "bcs/errors.hpp"

namespace bcs {

Rational RationalEnumeration::next() {
    if (phase_ == 0) {
        phase_ = 1;
        return Rational(0);
    }
    if (phase_ == 1) {
        phase_ = 2;
        return current_;
    }
    const Rational emitted = -current_;
    // Calkin-Wilf successor of the current positive rational. current_ stays
    // positive: 2*floor(q) - q + 1 > 0 for every positive q.
    const Int floor_q =
        boost::multiprecision::numerator(current_) / boost::multiprecision::denominator(current_);
    current_ = Rational(1) / (Rational(2) * Rational(floor_q) - current_ + 1);
    phase_ = 1;
    return emitted;
}

std::vector<Rational> enumerate_rationals(int count) {
    if (count < 1) {
        throw DomainError("enumeration length " + std::to_string(count) +
                          " must be at least 1");
    }
    RationalEnumeration en;
    std::vector<Rational> values;
    std::set<Rational> seen;
    values.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        Rational v = en.next();
        if (!seen.insert(v).second) {
            throw Error("internal: the rational enumeration repeated " + to_string(v));
        }
        values.push_back(std::move(v));
    }
    return values;
}

TranslatedFamily build_f0_prefix(const BalancedSystem& system, int count) {
    if (count < 1) {
        throw DomainError("family prefix length " + std::to_string(count) +
                          " must be at least 1");
    }
    if (count > system.depth()) {
        throw LevelOutOfRange("family prefix length " + std::to_string(count) +
                              " exceeds the system depth " +
                              std::to_string(system.depth()));
    }

    const std::vector<Rational> offsets = enumerate_rationals(count);
    const auto& branching = system.plan().branching;

    TranslatedFamily family;
    family.partial_measure_bound = 0;
    Int product = 1;
    for (int n = 1; n <= count; ++n) {
        product *= branching[n - 1];

        TranslatedEntry entry;
        entry.n = n;
        entry.star_piece.v.assign(static_cast<std::size_t>(n), 1);
        entry.offset = offsets[static_cast<std::size_t>(n - 1)];
        for (const auto& [idx, piece] :
             elementary_pieces(system, system.depth(), entry.star_piece)) {
            (void)idx;
            entry.intervals.push_back(piece.translated(entry.offset));
        }
        entry.expected_measure = Rational(Int(1), product);
        family.partial_measure_bound += entry.expected_measure;
        family.entries.push_back(std::move(entry));
    }
    return family;
}

F0BoundReport f0_measure_bound(const TranslatedFamily& family,
                               const GaugeFunction& gauge) {
    F0BoundReport report;
    report.recomputed_total = 0;
    report.declared_total = 0;

    bool all_match = true;
    for (const TranslatedEntry& entry : family.entries) {
        F0EntryCheck check;
        check.n = entry.n;
        check.declared = entry.expected_measure;

        Rational sum = 0;
        for (const ClosedInterval& interval : entry.intervals) {
            const Rational d = interval.diameter();
            if (d == 0) continue;
            try {
                sum += eval_gauge(gauge, d);
            } catch (const BelowResolution& e) {
                throw GaugeMismatch("entry " + std::to_string(entry.n) +
                                    " holds an interval of diameter " + to_string(d) +
                                    ", below the gauge floor " + e.floor +
                                    "; family and gauge disagree about the depth");
            }
        }
        check.recomputed = sum;
        check.match = (sum == check.declared);
        all_match = all_match && check.match;

        report.recomputed_total += check.recomputed;
        report.declared_total += check.declared;
        report.entries.push_back(std::move(check));
    }

    const int count = static_cast<int>(family.entries.size());
    report.geometric_ceiling = Rational(1) - pow2(-count);
    report.pass = all_match && report.recomputed_total == report.declared_total &&
                  report.declared_total == family.partial_measure_bound &&
                  report.declared_total <= report.geometric_ceiling;
    return report;
}

}  // namespace bcs
