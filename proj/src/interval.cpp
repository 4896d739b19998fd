#include "bcs/interval.hpp"

#include <algorithm>
#include <utility>

namespace bcs {

ClosedInterval::ClosedInterval(Rational lo, Rational hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) {
        throw DomainError("interval endpoints out of order: [" + to_string(lo_) +
                          ", " + to_string(hi_) + "]");
    }
}

bool ClosedInterval::intersects(const ClosedInterval& other) const {
    return std::max(lo_, other.lo_) <= std::min(hi_, other.hi_);
}

Rational interval_distance(const ClosedInterval& a, const ClosedInterval& b) {
    const Rational gap = std::max(a.lo(), b.lo()) - std::min(a.hi(), b.hi());
    return gap > 0 ? gap : Rational(0);
}

ClosedInterval hull(std::span<const ClosedInterval> pieces) {
    if (pieces.empty()) throw EmptyFamily("hull of an empty interval family");
    Rational lo = pieces.front().lo();
    Rational hi = pieces.front().hi();
    for (const ClosedInterval& p : pieces.subspan(1)) {
        if (p.lo() < lo) lo = p.lo();
        if (p.hi() > hi) hi = p.hi();
    }
    return {std::move(lo), std::move(hi)};
}

Rational hull_diameter(std::span<const ClosedInterval> pieces) {
    return hull(pieces).diameter();
}

}  // namespace bcs
