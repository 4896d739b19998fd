#pragma once

#include <initializer_list>

#include "bcs/assembly.hpp"
#include "bcs/contraction.hpp"
#include "bcs/mapgen.hpp"
#include "bcs/serialize.hpp"

// Shared fixtures: one reference system (branching 2, 2, 8, 96 — the
// smallest strict-growth depth-4 sequence) built once per test binary,
// plus small literal helpers.

namespace bcs_test {

inline bcs::ConstructionPlan canonical_plan() {
    bcs::ConstructionPlan plan;
    plan.branching = {2, 2, 8, 96};
    return plan;
}

inline const bcs::BalancedSystem& canonical_system() {
    static const bcs::BalancedSystem system =
        bcs::build_balanced_system(canonical_plan());
    return system;
}

inline const bcs::GaugeFunction& canonical_gauge() {
    static const bcs::GaugeFunction gauge = bcs::derive_gauge(canonical_system());
    return gauge;
}

inline bcs::MultiIndex idx(std::initializer_list<int> coords) {
    bcs::MultiIndex index;
    index.v.assign(coords.begin(), coords.end());
    return index;
}

inline bcs::Rational rat(const char* text) { return bcs::parse_rational(text); }

}  // namespace bcs_test
