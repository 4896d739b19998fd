#include "bcs/measure.hpp"

#include <algorithm>

#include "bcs/errors.hpp"

namespace bcs {

namespace {

Int product_through(const std::vector<long long>& branching, int m) {
    Int p = 1;
    for (int k = 0; k < m; ++k) p *= branching[k];
    return p;
}

// Level-m pieces of the cover's target, sorted by position. Sorting is a
// no-op for canonical builds (lex order is position order) but makes the
// consecutive-run structure well defined for hand-assembled systems.
std::vector<ClosedInterval> sorted_target_pieces(const BalancedSystem& system, int m,
                                                 const std::optional<MultiIndex>& target) {
    std::vector<ClosedInterval> out;
    for (const auto& [idx, piece] : elementary_pieces(system, m, target)) {
        (void)idx;
        out.push_back(piece);
    }
    std::sort(out.begin(), out.end(), [](const ClosedInterval& a, const ClosedInterval& b) {
        if (a.lo() != b.lo()) return a.lo() < b.lo();
        return a.hi() < b.hi();
    });
    return out;
}

}  // namespace

std::optional<MultiIndex> find_uncovered_piece(const BalancedSystem& system,
                                               const Cover& cover) {
    const auto deepest = elementary_pieces(system, system.depth(), cover.target);
    for (const auto& [idx, piece] : deepest) {
        bool touched = false;
        for (const ClosedInterval& element : cover.elements) {
            if (element.intersects(piece)) {
                touched = true;
                break;
            }
        }
        if (!touched) return idx;
    }
    return std::nullopt;
}

Rational cover_cost(const Cover& cover, const GaugeFunction& h) {
    Rational total = 0;
    for (std::size_t j = 0; j < cover.elements.size(); ++j) {
        const Rational d = cover.elements[j].diameter();
        if (d == 0) continue;
        try {
            total += eval_gauge(h, d);
        } catch (const BelowResolution& e) {
            throw BelowResolution("cover element " + std::to_string(j + 1) +
                                      " has diameter " + to_string(d) +
                                      ", below the resolved floor " + e.floor,
                                  e.floor);
        }
    }
    return total;
}

Cover canonical_cover(const BalancedSystem& system, int level,
                      std::optional<MultiIndex> target) {
    Cover cover;
    for (const auto& [idx, piece] : elementary_pieces(system, level, target)) {
        (void)idx;
        cover.elements.push_back(piece);
    }
    cover.target = std::move(target);
    return cover;
}

LowerBoundCertificate certify_lower_bound(const BalancedSystem& system,
                                          const GaugeFunction& h,
                                          const Cover& cover) {
    for (std::size_t j = 0; j < cover.elements.size(); ++j) {
        if (cover.elements[j].diameter() == 0) {
            throw DegenerateElement("cover element " + std::to_string(j + 1) +
                                    " is a single point; the counting argument needs "
                                    "positive diameters");
        }
    }
    if (cover.elements.empty()) {
        throw CoverageError("empty cover leaves every target piece uncovered");
    }
    if (auto missed = find_uncovered_piece(system, cover)) {
        throw CoverageError("no cover element meets piece " + missed->str());
    }

    Rational min_diam = cover.elements.front().diameter();
    for (const ClosedInterval& element : cover.elements) {
        const Rational d = element.diameter();
        if (d < min_diam) min_diam = d;
    }

    int m = 0;
    for (int level = 1; level <= system.depth(); ++level) {
        if (Rational(2) * system.b(level) < min_diam) {
            m = level;
            break;
        }
    }
    if (m == 0) {
        throw InsufficientDepth("no level m <= " + std::to_string(system.depth()) +
                                " has 2 b_m below the smallest element diameter " +
                                to_string(min_diam) +
                                "; elements this small need a deeper system");
    }

    LowerBoundCertificate cert;
    cert.m = m;
    cert.level_product = product_through(system.plan().branching, m);

    // Level-m pieces the elements are counted against. For a target deeper
    // than level m this is the single level-m ancestor.
    std::vector<ClosedInterval> targets;
    const int target_length = cover.target ? cover.target->length() : 0;
    if (cover.target && m <= target_length) {
        MultiIndex ancestor;
        ancestor.v.assign(cover.target->v.begin(), cover.target->v.begin() + m);
        targets.push_back(system.piece(ancestor));
    } else {
        targets = sorted_target_pieces(system, m, cover.target);
    }
    cert.target_piece_count = Int(targets.size());
    cert.claimed_measure = cover.target
                               ? Rational(Int(1), product_through(system.plan().branching,
                                                                  target_length))
                               : Rational(1);

    Int total_s = 0;
    for (const ClosedInterval& element : cover.elements) {
        CertificateElement ce;
        ce.diameter = element.diameter();
        ce.gauge_value = eval_gauge(h, ce.diameter);
        for (const ClosedInterval& piece : targets) {
            if (element.intersects(piece)) ++ce.s;
        }
        total_s += ce.s;
        cert.elements.push_back(std::move(ce));
    }
    cert.total_s = total_s;
    cert.bound = Rational(total_s, cert.level_product);

    cert.pass = true;
    if (total_s < cert.target_piece_count) {
        cert.pass = false;
        cert.witness = "counts total " + total_s.str() + ", below the " +
                       cert.target_piece_count.str() + " level-" + std::to_string(m) +
                       " target pieces; some piece went uncounted";
    }
    const Rational product(cert.level_product);
    for (std::size_t j = 0; cert.pass && j < cert.elements.size(); ++j) {
        const CertificateElement& ce = cert.elements[j];
        if (ce.gauge_value * product < Rational(Int(ce.s))) {
            cert.pass = false;
            cert.witness = "element " + std::to_string(j + 1) + ": h(" +
                           to_string(ce.diameter) + ") * " + cert.level_product.str() +
                           " = " + to_string(ce.gauge_value * product) +
                           " falls below its count " + std::to_string(ce.s);
        }
    }
    if (cert.pass && cert.bound < cert.claimed_measure) {
        cert.pass = false;
        cert.witness = "bound " + to_string(cert.bound) + " below the claimed measure " +
                       to_string(cert.claimed_measure);
    }
    return cert;
}

RecheckResult recheck_certificate(const LowerBoundCertificate& cert) {
    RecheckResult result;
    auto fail = [&result](std::string detail) {
        result.pass = false;
        result.detail = std::move(detail);
    };

    if (cert.m < 1) {
        fail("level m = " + std::to_string(cert.m) + " is not positive");
        return result;
    }
    if (cert.level_product < 1) {
        fail("level product " + cert.level_product.str() + " is not positive");
        return result;
    }
    if (cert.target_piece_count < 1) {
        fail("target piece count " + cert.target_piece_count.str() + " is not positive");
        return result;
    }
    if (cert.claimed_measure <= 0) {
        fail("claimed measure " + to_string(cert.claimed_measure) + " is not positive");
        return result;
    }

    const Rational product(cert.level_product);
    Int total = 0;
    Rational cost = 0;
    for (std::size_t j = 0; j < cert.elements.size(); ++j) {
        const CertificateElement& ce = cert.elements[j];
        if (ce.diameter <= 0) {
            fail("element " + std::to_string(j + 1) + " has non-positive diameter");
            return result;
        }
        if (ce.s < 0) {
            fail("element " + std::to_string(j + 1) + " has a negative count");
            return result;
        }
        if (ce.gauge_value * product < Rational(Int(ce.s))) {
            fail("element " + std::to_string(j + 1) + ": h(diam) * " +
                 cert.level_product.str() + " = " + to_string(ce.gauge_value * product) +
                 " falls below its count " + std::to_string(ce.s));
            return result;
        }
        total += ce.s;
        cost += ce.gauge_value;
    }
    if (total != cert.total_s) {
        fail("stored count total " + cert.total_s.str() +
             " disagrees with the element list total " + total.str());
        return result;
    }
    if (total < cert.target_piece_count) {
        fail("count total " + total.str() + " falls below the target piece count " +
             cert.target_piece_count.str());
        return result;
    }
    if (cert.bound != Rational(cert.total_s, cert.level_product)) {
        fail("stored bound " + to_string(cert.bound) +
             " is not count total / level product");
        return result;
    }
    if (cost < cert.bound) {
        fail("summed gauge values " + to_string(cost) + " fall below the bound " +
             to_string(cert.bound));
        return result;
    }
    if (cert.bound < cert.claimed_measure) {
        fail("bound " + to_string(cert.bound) + " falls below the claimed measure " +
             to_string(cert.claimed_measure));
        return result;
    }
    if (!cert.pass) {
        fail("fields verify but the stored verdict says fail: " + cert.witness);
        return result;
    }

    result.pass = true;
    result.detail = "cost >= " + to_string(cert.bound) + " >= " +
                    to_string(cert.claimed_measure) +
                    ", re-derived from the certificate fields alone";
    return result;
}

MinCoverResult min_cover_cost(const BalancedSystem& system, const GaugeFunction& h,
                              int m, std::optional<MultiIndex> target) {
    const std::vector<ClosedInterval> pieces = sorted_target_pieces(system, m, target);
    const std::size_t count = pieces.size();

    MinCoverResult result;
    const Rational& bm = system.b(m);
    for (const ClosedInterval& piece : pieces) {
        if (piece.diameter() != bm) {
            result.oracle_sound = false;
            result.note = "level-" + std::to_string(m) +
                          " diameters differ from b_" + std::to_string(m) +
                          "; the run-cover optimum may not equal the measure value";
            break;
        }
    }

    // best[j] = optimal cost covering the first j pieces by consecutive-run
    // hulls. The candidate run i..j has cost h(hull span), non-decreasing as
    // i moves left, so the scan stops once the run alone already matches the
    // best complete candidate.
    std::vector<Rational> best(count + 1);
    best[0] = 0;
    for (std::size_t j = 1; j <= count; ++j) {
        bool have = false;
        Rational best_j;
        Rational run_hi = pieces[j - 1].hi();
        for (std::size_t i = j; i >= 1; --i) {
            if (pieces[i - 1].hi() > run_hi) run_hi = pieces[i - 1].hi();
            const Rational span = run_hi - pieces[i - 1].lo();
            const Rational run_cost = span == 0 ? Rational(0) : eval_gauge(h, span);
            if (have && run_cost >= best_j) break;
            const Rational candidate = best[i - 1] + run_cost;
            if (!have || candidate < best_j) {
                best_j = candidate;
                have = true;
            }
        }
        best[j] = best_j;
    }
    result.cost = best[count];
    return result;
}

Cover normalize_cover(const BalancedSystem& system, int m, const Cover& cover) {
    const std::vector<ClosedInterval> pieces = sorted_target_pieces(system, m, cover.target);

    Cover out;
    out.target = cover.target;
    for (const ClosedInterval& element : cover.elements) {
        std::size_t first = pieces.size(), last = 0;
        for (std::size_t q = 0; q < pieces.size(); ++q) {
            if (element.intersects(pieces[q])) {
                if (first == pieces.size()) first = q;
                last = q;
            }
        }
        if (first == pieces.size()) continue;
        Rational hi = pieces[first].hi();
        for (std::size_t q = first + 1; q <= last; ++q) {
            if (pieces[q].hi() > hi) hi = pieces[q].hi();
        }
        out.elements.emplace_back(pieces[first].lo(), hi);
    }
    return out;
}

Rational lebesgue_outer_measure(const BalancedSystem& system, int level) {
    Rational total = 0;
    for (const ClosedInterval& piece : system.level_pieces(level)) {
        total += piece.diameter();
    }
    return total;
}

}  // namespace bcs
