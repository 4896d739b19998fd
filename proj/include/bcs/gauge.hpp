#pragma once

#include <utility>
#include <vector>

#include "bcs/construction.hpp"

namespace bcs {

/// Exact piecewise gauge derived from a system's (a_n, b_n) data: value
/// 1/(a_1...a_n) on [2b_{n+1}, b_n], linear on [b_n, 2b_n], 1 above 2b_1,
/// 0 at 0. Stored as breakpoints; evaluation is table lookup plus exact
/// linear interpolation, so constant segments fall out of equal endpoint
/// values. Below b_N the function is deliberately unresolved: any
/// extrapolation would silently change measure values.
class GaugeFunction {
public:
    GaugeFunction() = default;
    /// Breakpoints must be strictly increasing in x with non-decreasing
    /// values; throws DomainError otherwise.
    GaugeFunction(std::vector<std::pair<Rational, Rational>> breakpoints, int depth);

    const std::vector<std::pair<Rational, Rational>>& breakpoints() const {
        return breakpoints_;
    }
    int depth() const { return depth_; }

    /// b_N: smallest x the table resolves.
    const Rational& resolution_floor() const;
    /// 2b_1: the gauge is 1 from here on.
    const Rational& tail_threshold() const;

    bool operator==(const GaugeFunction&) const = default;

private:
    std::vector<std::pair<Rational, Rational>> breakpoints_;
    int depth_ = 0;
};

/// Builds the breakpoint table from the system's branching products and
/// separation radii; asserts continuity and monotonicity of the result.
/// The system is expected to pass validate_balanced (caller's obligation);
/// the decay 2b_{n+1} < b_n is re-checked here because the table is
/// ill-formed without it.
GaugeFunction derive_gauge(const BalancedSystem& system);

/// Exact evaluation. h(0) = 0; x >= 2b_1 gives 1; 0 < x < b_N throws
/// BelowResolution carrying b_N; x < 0 throws DomainError.
Rational eval_gauge(const GaugeFunction& h, const Rational& x);

struct MinorantRow {
    Rational x;
    Rational gauge_value;
    Rational linear_value;  // x / c
    bool ok = true;
};

struct MinorantReport {
    bool pass = true;
    std::vector<MinorantRow> rows;       // ascending x, 0 first
    std::optional<Rational> witness_x;   // first failing breakpoint
    std::string reduction_note;
};

/// Verifies h(x) >= x/c at 0 and at every breakpoint x <= b_1. Both sides
/// are piecewise linear between consecutive checked points, so endpoint
/// verification settles the inequality on the whole resolved domain
/// [0] u [b_N, b_1]; the report records that reduction. Throws DomainError
/// unless c > 0.
MinorantReport check_linear_minorant(const GaugeFunction& h, const Rational& c);

}  // namespace bcs
