#include "bcs/gauge.hpp"

#include <algorithm>
#include <utility>

namespace bcs {

GaugeFunction::GaugeFunction(std::vector<std::pair<Rational, Rational>> breakpoints,
                             int depth)
    : breakpoints_(std::move(breakpoints)), depth_(depth) {
    if (depth_ < 1) throw DomainError("gauge depth must be at least 1");
    if (breakpoints_.size() < 3) {
        throw DomainError("gauge table needs at least the origin and one resolved segment");
    }
    if (breakpoints_.front() != std::pair<Rational, Rational>(Rational(0), Rational(0))) {
        throw DomainError("gauge table must start at (0, 0)");
    }
    for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
        if (!(breakpoints_[k - 1].first < breakpoints_[k].first)) {
            throw DomainError("gauge breakpoints must be strictly increasing in x at index " +
                              std::to_string(k));
        }
        if (breakpoints_[k - 1].second > breakpoints_[k].second) {
            throw DomainError("gauge values must be non-decreasing at index " +
                              std::to_string(k));
        }
    }
}

const Rational& GaugeFunction::resolution_floor() const {
    return breakpoints_[1].first;
}

const Rational& GaugeFunction::tail_threshold() const {
    return breakpoints_.back().first;
}

GaugeFunction derive_gauge(const BalancedSystem& system) {
    const int depth = system.depth();
    for (int n = 1; n < depth; ++n) {
        if (!(2 * system.b(n + 1) < system.b(n))) {
            throw DomainError("gauge table would be ill-formed: 2*b_" +
                              std::to_string(n + 1) + " = " +
                              to_string(2 * system.b(n + 1)) + " is not below b_" +
                              std::to_string(n) + " = " + to_string(system.b(n)));
        }
    }
    // Level products a_1..a_n; value 1/product on [2b_{n+1}, b_n], rising
    // linearly to 1/(a_1..a_{n-1}) on [b_n, 2b_n].
    std::vector<Rational> value(depth + 1);
    value[0] = 1;
    Int product = 1;
    for (int n = 1; n <= depth; ++n) {
        product *= system.plan().branching[n - 1];
        value[n] = Rational(Int(1), product);
    }
    std::vector<std::pair<Rational, Rational>> table;
    table.reserve(2 * depth + 1);
    table.emplace_back(Rational(0), Rational(0));
    for (int n = depth; n >= 1; --n) {
        table.emplace_back(system.b(n), value[n]);
        table.emplace_back(2 * system.b(n), value[n - 1]);
    }
    return GaugeFunction(std::move(table), depth);
}

Rational eval_gauge(const GaugeFunction& h, const Rational& x) {
    if (x < 0) throw DomainError("gauge evaluated at negative argument " + to_string(x));
    if (x == 0) return 0;
    const auto& bp = h.breakpoints();
    const Rational& floor = h.resolution_floor();
    if (x < floor) {
        throw BelowResolution("gauge argument " + to_string(x) +
                                  " is below the resolved floor " + to_string(floor),
                              to_string(floor));
    }
    if (x >= bp.back().first) return bp.back().second;
    const auto it = std::upper_bound(
        bp.begin(), bp.end(), x,
        [](const Rational& v, const std::pair<Rational, Rational>& p) { return v < p.first; });
    // x >= floor and x < last breakpoint, so it points past a valid segment start.
    const auto right = it;
    const auto left = it - 1;
    if (x == left->first) return left->second;
    // Constant segment: skip the interpolation arithmetic entirely.
    if (left->second == right->second) return left->second;
    const Rational t = (x - left->first) / (right->first - left->first);
    return left->second + (right->second - left->second) * t;
}

MinorantReport check_linear_minorant(const GaugeFunction& h, const Rational& c) {
    if (!(c > 0)) {
        throw DomainError("linear minorant slope 1/c needs c > 0, got c = " + to_string(c));
    }
    const auto& bp = h.breakpoints();
    // b_1 is the start of the last linear segment.
    const Rational& b1 = bp[bp.size() - 2].first;

    MinorantReport report;
    report.reduction_note =
        "both sides are affine between consecutive checked points, so the endpoint "
        "inequalities extend to the whole resolved domain {0} u [" +
        to_string(h.resolution_floor()) + ", " + to_string(b1) + "]";
    const auto add_row = [&report, &c](const Rational& x, const Rational& gauge_value) {
        MinorantRow row;
        row.x = x;
        row.gauge_value = gauge_value;
        row.linear_value = x / c;
        row.ok = gauge_value >= row.linear_value;
        if (!row.ok && report.pass) {
            report.pass = false;
            report.witness_x = x;
        }
        report.rows.push_back(std::move(row));
    };
    add_row(Rational(0), Rational(0));
    for (std::size_t k = 1; k < bp.size(); ++k) {
        if (bp[k].first > b1) break;
        add_row(bp[k].first, bp[k].second);
    }
    return report;
}

}  // namespace bcs
