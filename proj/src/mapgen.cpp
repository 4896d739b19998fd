#include "bcs/mapgen.hpp"

#include <string>

#include "bcs/errors.hpp"

namespace bcs {

namespace {

// mt19937_64 output is specified bit-for-bit by the standard; reducing it
// with % keeps the draw sequence identical across platforms, unlike
// uniform_int_distribution, whose algorithm is implementation-defined.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

long long signed_draw(std::mt19937_64& rng, long long radius) {
    return static_cast<long long>(draw(rng, 2 * static_cast<std::uint64_t>(radius) + 1)) -
           radius;
}

}  // namespace

FiniteMap random_weak_contraction(const BalancedSystem& system, std::uint64_t seed) {
    if (system.depth() < 2) {
        throw DomainError("sampled maps draw their domain one level above the deepest; "
                          "depth " + std::to_string(system.depth()) + " leaves no room");
    }
    const std::vector<Rational> reps = level_representatives(system, system.depth() - 1);
    const Rational jitter_unit = system.b(system.depth()) / 64;

    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 256; ++attempt) {
        const long long numerator = static_cast<long long>(draw(rng, 128));
        Rational alpha(numerator, 128);
        if (draw(rng, 2) == 1) alpha = -alpha;
        const Rational anchor = reps[draw(rng, reps.size())];
        const Rational landing = reps[draw(rng, reps.size())];

        std::vector<std::pair<Rational, Rational>> pts;
        pts.reserve(reps.size());
        for (const Rational& x : reps) {
            const long long j = signed_draw(rng, 8);
            Rational image = landing + alpha * (x - anchor) + Rational(j) * jitter_unit;
            pts.emplace_back(x, std::move(image));
        }
        FiniteMap map = FiniteMap::from_points(
            std::move(pts), "jittered-affine seed=" + std::to_string(seed) +
                                " attempt=" + std::to_string(attempt));
        if (check_weak_contraction(map).pass) return map;
    }
    throw DomainError("rejection sampling failed to reach a weak contraction in 256 "
                      "attempts for seed " + std::to_string(seed));
}

FiniteMap random_affine_contraction(const BalancedSystem& system, std::uint64_t seed,
                                    std::optional<Rational> fixed_point) {
    if (system.depth() < 2) {
        throw DomainError("sampled maps draw their domain one level above the deepest; "
                          "depth " + std::to_string(system.depth()) + " leaves no room");
    }
    const std::vector<Rational> reps = level_representatives(system, system.depth() - 1);

    std::mt19937_64 rng(seed);
    const long long numerator = static_cast<long long>(draw(rng, 128));
    Rational alpha(numerator, 128);
    if (draw(rng, 2) == 1) alpha = -alpha;

    Rational c;
    if (fixed_point) {
        c = *fixed_point;
    } else {
        const std::vector<Rational> deep = level_representatives(system, system.depth());
        c = deep[draw(rng, deep.size())];
    }

    std::vector<std::pair<Rational, Rational>> pts;
    pts.reserve(reps.size() + 1);
    bool c_sampled = false;
    for (const Rational& x : reps) {
        if (x == c) c_sampled = true;
        Rational image = c + alpha * (x - c);
        pts.emplace_back(x, std::move(image));
    }
    if (!c_sampled) pts.emplace_back(c, c);

    return FiniteMap::from_points(std::move(pts),
                                  "affine seed=" + std::to_string(seed) +
                                      " fixed-point=" + to_string(c));
}

FiniteMap plant_expansive_pair(const FiniteMap& map, std::uint64_t seed) {
    if (map.points.size() < 2) {
        throw MalformedMap("planting an expansive pair needs at least two samples");
    }
    std::mt19937_64 rng(seed);
    const std::size_t k = draw(rng, map.points.size() - 1);

    FiniteMap out = map;
    const Rational gap = out.points[k + 1].first - out.points[k].first;
    out.points[k].second = out.points[k].first - gap;
    out.points[k + 1].second = out.points[k + 1].first + gap;
    out.provenance += " +planted-expansive-pair";
    return out;
}

}  // namespace bcs
