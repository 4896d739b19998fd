#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "bcs/contraction.hpp"

// Deterministic, seed-driven generators for sampled maps. Domain points
// are always the level-(depth-1) representatives, one per piece, so every
// generated table clears the sampling gate of the intersection analysis.
// Targets (images, fixed points, slopes) are drawn as exact rationals on
// a power-of-two grid; what the generator cannot guarantee by construction
// it earns by rejection against the exact pairwise contraction check.

namespace bcs {

/// A sampled map whose images are drawn near the system's pieces and
/// rejection-sampled until the strict pairwise check passes. Identical
/// seeds give identical tables.
FiniteMap random_weak_contraction(const BalancedSystem& system,
                                  std::uint64_t seed);

/// A sampled affine map x -> alpha*(x - c) + c with |alpha| < 1 drawn from
/// a power-of-two grid; c is the planted fixed point (default: a random
/// deepest-level representative). Affine with |alpha| < 1 is pairwise
/// strictly contracting by construction, and c is carried as a sample.
FiniteMap random_affine_contraction(const BalancedSystem& system,
                                    std::uint64_t seed,
                                    std::optional<Rational> fixed_point = std::nullopt);

/// Copies the map and overwrites the images at two random adjacent domain
/// points so their gap strictly expands; the result must fail the pairwise
/// check. Used to exercise the refutation paths.
FiniteMap plant_expansive_pair(const FiniteMap& map, std::uint64_t seed);

}  // namespace bcs
