#pragma once

#include <span>
#include <vector>

#include "bcs/rational.hpp"

namespace bcs {

/// Closed interval [lo, hi] with lo <= hi. Degenerate intervals (lo == hi)
/// are allowed and have diameter 0.
class ClosedInterval {
public:
    ClosedInterval() = default;
    ClosedInterval(Rational lo, Rational hi);

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational diameter() const { return hi_ - lo_; }

    bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const ClosedInterval& other) const {
        return lo_ <= other.lo_ && other.hi_ <= hi_;
    }
    bool intersects(const ClosedInterval& other) const;

    ClosedInterval translated(const Rational& offset) const {
        return {lo_ + offset, hi_ + offset};
    }

    bool operator==(const ClosedInterval&) const = default;

private:
    Rational lo_ = 0;
    Rational hi_ = 0;
};

/// max(0, max(lo) - min(hi)); zero exactly when the intervals intersect.
Rational interval_distance(const ClosedInterval& a, const ClosedInterval& b);

/// Smallest closed interval containing every member. Throws EmptyFamily on
/// an empty list.
ClosedInterval hull(std::span<const ClosedInterval> pieces);

/// (max hi) - (min lo) over the list; throws EmptyFamily on an empty list.
Rational hull_diameter(std::span<const ClosedInterval> pieces);

}  // namespace bcs
