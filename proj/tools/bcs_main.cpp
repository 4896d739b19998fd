// Command-line front end: builds systems, derives gauges, prices covers,
// checks certificates and contraction properties, and writes every result
// as a versioned JSON artifact. Exit codes: 0 = requested checks pass,
// 1 = a mathematical check failed (the output names the witness),
// 2 = unusable input (bad flags, malformed files, out-of-range requests).

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bcs/assembly.hpp"
#include "bcs/contraction.hpp"
#include "bcs/mapgen.hpp"
#include "bcs/serialize.hpp"

namespace {

using namespace bcs;

std::vector<long long> parse_branching_csv(const std::string& text) {
    std::vector<long long> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string token =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (token.empty()) throw ParseError("empty entry in branching list \"" + text + "\"");
        try {
            std::size_t used = 0;
            const long long v = std::stoll(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            values.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("branching entry \"" + token + "\" is not an integer");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (values.empty()) throw ParseError("branching list \"" + text + "\" is empty");
    return values;
}

ClosedInterval parse_ambient(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw ParseError("ambient interval must be written lo:hi, got \"" + text + "\"");
    }
    const Rational lo = parse_rational(text.substr(0, colon));
    const Rational hi = parse_rational(text.substr(colon + 1));
    try {
        return ClosedInterval(lo, hi);
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

MultiIndex parse_index(const std::string& text) {
    MultiIndex idx;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t dot = text.find('.', pos);
        const std::string token =
            text.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        try {
            std::size_t used = 0;
            const int v = std::stoi(token, &used);
            if (used != token.size() || v < 1) throw std::invalid_argument(token);
            idx.v.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("multi-index coordinate \"" + token + "\" in \"" + text +
                             "\" is not a positive integer");
        }
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    if (idx.v.empty()) throw ParseError("multi-index \"" + text + "\" is empty");
    return idx;
}

BalancedSystem load_system(const std::string& path) {
    return system_from_json(read_artifact(path, kFormatSystem));
}

GaugeFunction gauge_for(const BalancedSystem& system, const std::string& gauge_path) {
    if (gauge_path.empty()) return derive_gauge(system);
    return gauge_from_json(read_artifact(gauge_path, kFormatGauge));
}

std::string index_or_whole(const std::optional<MultiIndex>& target) {
    return target ? target->str() : std::string("whole system");
}

// ---------------------------------------------------------------------------

struct PlanOpts {
    std::string branching;
    std::string ambient = "0:1";
    bool relaxed = false;
    std::string out;
};

int run_plan(const PlanOpts& opts) {
    ConstructionPlan plan;
    plan.branching = parse_branching_csv(opts.branching);
    plan.ambient = parse_ambient(opts.ambient);
    plan.strict_growth = !opts.relaxed;
    plan.validate();
    std::cout << "plan: depth " << plan.depth() << ", mode "
              << (plan.strict_growth ? "strict" : "relaxed") << ", ambient ["
              << to_string(plan.ambient.lo()) << ", " << to_string(plan.ambient.hi())
              << "]\n";
    std::cout << "branching:";
    for (long long a : plan.branching) std::cout << ' ' << a;
    std::cout << '\n';
    if (!opts.out.empty()) {
        write_artifact(opts.out, kFormatPlan, plan_json(plan));
        std::cout << "wrote " << opts.out << '\n';
    }
    return 0;
}

struct BuildOpts {
    std::string plan_path;
    std::string branching;
    std::string ambient = "0:1";
    bool relaxed = false;
    std::string out;
};

int run_build(const BuildOpts& opts) {
    ConstructionPlan plan;
    if (!opts.plan_path.empty()) {
        plan = plan_from_json(read_artifact(opts.plan_path, kFormatPlan));
    } else if (!opts.branching.empty()) {
        plan.branching = parse_branching_csv(opts.branching);
        plan.ambient = parse_ambient(opts.ambient);
        plan.strict_growth = !opts.relaxed;
    } else {
        throw DomainError("build needs --plan or --branching");
    }
    const BalancedSystem system = build_balanced_system(plan);
    std::cout << "built depth-" << system.depth() << " system\n";
    for (int level = 1; level <= system.depth(); ++level) {
        std::cout << "level " << level << ": " << system.level_count(level)
                  << " pieces, b_" << level << " = " << to_string(system.b(level))
                  << '\n';
    }
    if (!opts.out.empty()) {
        write_artifact(opts.out, kFormatSystem, system_json(system));
        std::cout << "wrote " << opts.out << '\n';
    }
    return 0;
}

struct ValidateOpts {
    std::string system_path;
    std::string out;
};

int run_validate(const ValidateOpts& opts) {
    const BalancedSystem system = load_system(opts.system_path);
    const ValidationReport report = validate_balanced(system);
    for (const PropertyCheck& check : report.checks) {
        if (check.pass) {
            std::cout << "  [pass] " << check.property << '\n';
        } else {
            std::cout << "  [FAIL] " << check.property << " — " << check.witness << '\n';
        }
    }
    if (!opts.out.empty()) {
        write_artifact(opts.out, kFormatValidation, validation_json(report));
        std::cout << "wrote " << opts.out << '\n';
    }
    if (report.all_pass()) {
        std::cout << "validation: all " << report.checks.size() << " checks pass\n";
        return 0;
    }
    std::cout << "validation: failed\n";
    return 1;
}

struct GaugeOpts {
    std::string system_path;
    std::string out;
    int samples = 0;
};

int run_gauge(const GaugeOpts& opts) {
    const BalancedSystem system = load_system(opts.system_path);
    const GaugeFunction gauge = derive_gauge(system);
    std::cout << "gauge: " << gauge.breakpoints().size() << " breakpoints, depth "
              << gauge.depth() << '\n';
    std::cout << "resolution floor = " << to_string(gauge.resolution_floor())
              << ", tail threshold = " << to_string(gauge.tail_threshold()) << '\n';
    if (!opts.out.empty()) {
        write_artifact(opts.out, kFormatGauge, gauge_json(gauge));
        std::cout << "wrote " << opts.out << '\n';
    }
    if (opts.samples > 0) {
        std::cout << "h(0) = 0\n";
        const int k = opts.samples - 1;
        const Rational lo = gauge.resolution_floor();
        const Rational span = gauge.tail_threshold() - lo;
        for (int i = 0; i < k; ++i) {
            const Rational x = k == 1 ? lo : Rational(lo + span * Rational(i, k - 1));
            std::cout << "h(" << to_string(x) << ") = " << to_string(eval_gauge(gauge, x))
                      << '\n';
        }
    }
    return 0;
}

struct CoverCostOpts {
    std::string system_path;
    std::string cover_path;
    int level = 0;
    std::string target;
    std::string gauge_path;
    std::string out;
};

int run_cover_cost(const CoverCostOpts& opts) {
    const BalancedSystem system = load_system(opts.system_path);
    Cover cover;
    if (!opts.cover_path.empty()) {
        cover = cover_from_json(read_artifact(opts.cover_path, kFormatCover));
    } else if (opts.level > 0) {
        std::optional<MultiIndex> target;
        if (!opts.target.empty()) target = parse_index(opts.target);
        cover = canonical_cover(system, opts.level, std::move(target));
    } else {
        throw DomainError("cover-cost needs --cover or --level");
    }
    const GaugeFunction gauge = gauge_for(system, opts.gauge_path);
    const Rational cost = cover_cost(cover, gauge);
    std::cout << "target: " << index_or_whole(cover.target) << '\n';
    std::cout << "elements: " << cover.elements.size() << '\n';
    std::cout << "cover cost: " << to_string(cost) << '\n';
    if (!opts.out.empty()) {
        write_artifact(opts.out, kFormatCover, cover_json(cover));
        std::cout << "wrote " << opts.out << '\n';
    }
    return 0;
}

struct CertifyOpts {
    std::string system_path;
    std::string cover_path;
    std::string gauge_path;
    std::string recheck_only;
    bool recheck = false;
    std::string out;
};

int run_certify(const CertifyOpts& opts) {
    if (!opts.recheck_only.empty()) {
        const LowerBoundCertificate cert =
            certificate_from_json(read_artifact(opts.recheck_only, kFormatCertificate));
        const RecheckResult result = recheck_certificate(cert);
        std::cout << "recheck (certificate fields alone): "
                  << (result.pass ? "pass" : "FAIL") << " — " << result.detail << '\n';
        return result.pass ? 0 : 1;
    }
    if (opts.system_path.empty() || opts.cover_path.empty()) {
        throw DomainError("certify needs --system and --cover (or --recheck-only)");
    }
    const BalancedSystem system = load_system(opts.system_path);
    const Cover cover = cover_from_json(read_artifact(opts.cover_path, kFormatCover));
    const GaugeFunction gauge = gauge_for(system, opts.gauge_path);
    const LowerBoundCertificate cert = certify_lower_bound(system, gauge, cover);
    std::cout << "target: " << index_or_whole(cover.target) << '\n';
    std::cout << "counting level m = " << cert.m << ", level product = "
              << cert.level_product.str() << '\n';
    std::cout << "target pieces = " << cert.target_piece_count.str()
              << ", counts total = " << cert.total_s.str() << '\n';
    std::cout << "bound = " << to_string(cert.bound) << ", claimed measure = "
              << to_string(cert.claimed_measure) << '\n';
    if (cert.pass) {
        std::cout << "certificate: pass\n";
    } else {
        std::cout << "certificate: FAIL — " << cert.witness << '\n';
    }
    bool ok = cert.pass;
    if (opts.recheck) {
        const RecheckResult result = recheck_certificate(cert);
        std::cout << "recheck (certificate fields alone): "
                  << (result.pass ? "pass" : "FAIL") << " — " << result.detail << '\n';
        ok = ok && result.pass;
    }
    if (!opts.out.empty()) {
        write_artifact(opts.out, kFormatCertificate, certificate_json(cert));
        std::cout << "wrote " << opts.out << '\n';
    }
    return ok ? 0 : 1;
}

struct MinCoverOpts {
    std::string system_path;
    int level = 0;
    std::string target;
    std::string gauge_path;
    std::string out;
};

int run_min_cover(const MinCoverOpts& opts) {
    const BalancedSystem system = load_system(opts.system_path);
    const GaugeFunction gauge = gauge_for(system, opts.gauge_path);
    std::optional<MultiIndex> target;
    if (!opts.target.empty()) target = parse_index(opts.target);
    const MinCoverResult result = min_cover_cost(system, gauge, opts.level, target);
    std::cout << "target: " << index_or_whole(target) << '\n';
    std::cout << "minimal consecutive-run cover cost at level " << opts.level << ": "
              << to_string(result.cost) << '\n';
    if (!result.oracle_sound) std::cout << "warning: " << result.note << '\n';
    if (!opts.out.empty()) {
        write_artifact(opts.out, kFormatMinCover,
                       min_cover_json(result, opts.level, target));
        std::cout << "wrote " << opts.out << '\n';
    }
    return 0;
}

struct LebesgueOpts {
    std::string system_path;
    std::string out;
};

int run_lebesgue(const LebesgueOpts& opts) {
    const BalancedSystem system = load_system(opts.system_path);
    const Json payload = lebesgue_json(system);
    for (const auto& entry : payload.at("levels")) {
        std::cout << "level " << entry.at("level").get<int>()
                  << ": total length = " << entry.at("measure").get<std::string>();
        if (entry.contains("halved")) {
            std::cout << (entry.at("halved").get<bool>() ? "  (halved or better)"
                                                         : "  (NOT halved)");
        }
        std::cout << '\n';
    }
    const bool ok = payload.at("halving_ok").get<bool>();
    std::cout << "interval lengths halve level to level: " << (ok ? "yes" : "NO") << '\n';
    if (!opts.out.empty()) {
        write_artifact(opts.out, kFormatLebesgue, payload);
        std::cout << "wrote " << opts.out << '\n';
    }
    return ok ? 0 : 1;
}

struct ContractionOpts {
    std::string system_path;
    std::string map_path;
    bool random = false;
    std::uint64_t seed = 0;
    std::string target;
    int m = 0;
    int decomposition_depth = 0;
    std::string map_out;
    std::string out;
};

const char* branch_name(DecompositionBranch branch) {
    switch (branch) {
        case DecompositionBranch::fixed: return "fixed";
        case DecompositionBranch::separated: return "separated";
        case DecompositionBranch::depth_exhausted: return "depth-exhausted";
        case DecompositionBranch::outside_image: return "outside-image";
    }
    return "?";
}

int run_contraction_check(const ContractionOpts& opts) {
    const BalancedSystem system = load_system(opts.system_path);
    FiniteMap map;
    if (!opts.map_path.empty()) {
        map = map_from_json(read_artifact(opts.map_path, kFormatMap));
    } else if (opts.random) {
        map = random_weak_contraction(system, opts.seed);
    } else {
        throw DomainError("contraction-check needs --map or --random");
    }
    if (!opts.map_out.empty()) {
        write_artifact(opts.map_out, kFormatMap, map_json(map));
        std::cout << "wrote " << opts.map_out << '\n';
    }
    std::cout << "map: " << map.points.size() << " samples ("
              << (map.provenance.empty() ? "unattributed" : map.provenance) << ")\n";

    Json payload;
    const ContractionCheck check = check_weak_contraction(map);
    payload["map_pass"] = check.pass;
    if (!check.pass) {
        std::cout << "pairwise contraction: FAIL — samples " << to_string(check.xi)
                  << " and " << to_string(check.xj) << " have image gap "
                  << to_string(check.image_gap) << " >= domain gap "
                  << to_string(check.domain_gap) << '\n';
        Json witness;
        witness["xi"] = to_string(check.xi);
        witness["xj"] = to_string(check.xj);
        witness["image_gap"] = to_string(check.image_gap);
        witness["domain_gap"] = to_string(check.domain_gap);
        payload["witness"] = std::move(witness);
        if (!opts.out.empty()) {
            write_artifact(opts.out, kFormatContraction, std::move(payload));
            std::cout << "wrote " << opts.out << '\n';
        }
        return 1;
    }
    std::cout << "pairwise contraction: pass (strict on all pairs)\n";

    const std::vector<Rational> fixed = find_fixed_points(map);
    std::cout << "fixed points: " << fixed.size();
    for (const Rational& x : fixed) std::cout << ' ' << to_string(x);
    std::cout << '\n';
    Json fixed_json = Json::array();
    for (const Rational& x : fixed) fixed_json.push_back(to_string(x));
    payload["fixed_points"] = std::move(fixed_json);

    std::vector<std::pair<MultiIndex, int>> pairs;
    if (!opts.target.empty() || opts.m > 0) {
        if (opts.target.empty() || opts.m <= 0) {
            throw DomainError("--target and --m go together");
        }
        pairs.emplace_back(parse_index(opts.target), opts.m);
    } else {
        pairs = admissible_intersection_pairs(system);
    }

    bool refuted = fixed.size() > 1;
    if (fixed.size() > 1) {
        std::cout << "REFUTATION: a strictly contracting sample table admits at most "
                     "one fixed point\n";
    }
    Json pair_json = Json::array();
    for (const auto& [target, m] : pairs) {
        const IntersectionReport report = analyze_child_intersections(system, map, target, m);
        Json entry;
        entry["target"] = multi_index_json(target);
        entry["m"] = m;
        entry["outside_pieces"] = report.child_hits.size();
        entry["max_child_hits"] = report.max_count;
        entry["refutation"] = report.refutation;
        std::cout << "target " << target.str() << ", m = " << m << ": "
                  << report.child_hits.size() << " outside pieces, max child hits = "
                  << report.max_count << '\n';
        if (report.refutation) {
            refuted = true;
            std::cout << "REFUTATION: an image hull meets " << report.max_count
                      << " children; separation and contraction are incompatible here\n";
        } else {
            const Rational bound = bound_overlap_measure(system, report);
            entry["bound"] = to_string(bound);
            std::cout << "certified overlap bound: " << to_string(bound) << '\n';
        }
        pair_json.push_back(std::move(entry));
    }
    payload["pairs"] = std::move(pair_json);

    const int ddepth =
        opts.decomposition_depth > 0 ? opts.decomposition_depth : system.depth();
    const DecompositionReport decomposition =
        check_overlap_decomposition(system, map, ddepth);
    std::size_t counts[4] = {0, 0, 0, 0};
    Json rows = Json::array();
    for (const DecompositionRow& row : decomposition.rows) {
        counts[static_cast<int>(row.branch)]++;
        Json r;
        r["x"] = to_string(row.x);
        r["fx"] = to_string(row.fx);
        r["branch"] = branch_name(row.branch);
        if (row.branch == DecompositionBranch::separated ||
            row.branch == DecompositionBranch::depth_exhausted) {
            r["level"] = row.level;
            r["piece"] = multi_index_json(row.piece);
        }
        rows.push_back(std::move(r));
    }
    std::cout << "decomposition at depth " << ddepth << ": "
              << counts[static_cast<int>(DecompositionBranch::fixed)] << " fixed, "
              << counts[static_cast<int>(DecompositionBranch::separated)] << " separated, "
              << counts[static_cast<int>(DecompositionBranch::depth_exhausted)]
              << " depth-exhausted, "
              << counts[static_cast<int>(DecompositionBranch::outside_image)]
              << " outside-image\n";
    std::cout << "separation persists at deeper levels: "
              << (decomposition.monotone_ok ? "yes" : "NO") << '\n';
    Json decomposition_json;
    decomposition_json["depth"] = ddepth;
    decomposition_json["monotone_ok"] = decomposition.monotone_ok;
    decomposition_json["rows"] = std::move(rows);
    payload["decomposition"] = std::move(decomposition_json);

    if (!decomposition.monotone_ok) refuted = true;
    if (!opts.out.empty()) {
        write_artifact(opts.out, kFormatContraction, std::move(payload));
        std::cout << "wrote " << opts.out << '\n';
    }
    std::cout << (refuted ? "contraction-check: FAIL\n" : "contraction-check: pass\n");
    return refuted ? 1 : 0;
}

struct SweepOpts {
    std::string system_path;
    std::uint64_t seed = 0;
    int maps = 100;
    std::string out;
};

int run_an_sweep(const SweepOpts& opts) {
    if (opts.maps < 1) throw DomainError("--maps must be at least 1");
    const BalancedSystem system = load_system(opts.system_path);
    const std::vector<AnBoundRow> rows = an_bound_table(system);
    bool all_within = true;
    for (const AnBoundRow& row : rows) {
        std::cout << "n = " << row.n << ": (a_1..a_n)/a_" << row.n + 1 << " = "
                  << to_string(row.bound) << " <= " << to_string(row.one_over_n) << ": "
                  << (row.within ? "yes" : "NO") << '\n';
        all_within = all_within && row.within;
    }

    const std::vector<std::pair<MultiIndex, int>> pairs =
        admissible_intersection_pairs(system);
    int max_hits = 0;
    for (int i = 0; i < opts.maps; ++i) {
        const FiniteMap map =
            random_weak_contraction(system, opts.seed + static_cast<std::uint64_t>(i));
        for (const auto& [target, m] : pairs) {
            const IntersectionReport report =
                analyze_child_intersections(system, map, target, m);
            if (report.max_count > max_hits) max_hits = report.max_count;
        }
    }
    std::cout << "maps: " << opts.maps << ", admissible pairs per map: " << pairs.size()
              << ", max child hits across the sweep: " << max_hits << '\n';
    const bool ok = all_within && max_hits <= 1;
    std::cout << "an-sweep: " << (ok ? "pass" : "FAIL") << '\n';

    if (!opts.out.empty()) {
        Json payload = sweep_json(rows);
        payload["seed"] = opts.seed;
        payload["maps"] = opts.maps;
        payload["max_child_hits"] = max_hits;
        payload["pass"] = ok;
        write_artifact(opts.out, kFormatSweep, std::move(payload));
        std::cout << "wrote " << opts.out << '\n';
    }
    return ok ? 0 : 1;
}

struct F0Opts {
    std::string system_path;
    int count = 0;
    std::string out;
};

int run_f0(const F0Opts& opts) {
    const BalancedSystem system = load_system(opts.system_path);
    const TranslatedFamily family = build_f0_prefix(system, opts.count);
    const GaugeFunction gauge = derive_gauge(system);
    const F0BoundReport report = f0_measure_bound(family, gauge);
    for (std::size_t k = 0; k < family.entries.size(); ++k) {
        const TranslatedEntry& entry = family.entries[k];
        const F0EntryCheck& check = report.entries[k];
        std::cout << "entry " << entry.n << ": piece " << entry.star_piece.str()
                  << " shifted by " << to_string(entry.offset) << ", "
                  << entry.intervals.size() << " intervals, declared "
                  << to_string(check.declared) << ", recomputed "
                  << to_string(check.recomputed) << (check.match ? "" : "  MISMATCH")
                  << '\n';
    }
    std::cout << "partial measure bound: " << to_string(family.partial_measure_bound)
              << '\n';
    std::cout << "geometric ceiling: " << to_string(report.geometric_ceiling) << '\n';
    std::cout << "family prefix: " << (report.pass ? "pass" : "FAIL") << '\n';
    if (!opts.out.empty()) {
        write_artifact(opts.out, kFormatF0, f0_json(family, report));
        std::cout << "wrote " << opts.out << '\n';
    }
    return report.pass ? 0 : 1;
}

struct ReportOpts {
    std::string system_path;
    int samples = 64;
    std::string out;
};

int run_report(const ReportOpts& opts) {
    const BalancedSystem system = load_system(opts.system_path);
    std::ostringstream text;
    bool overall = true;

    text << "== construction ==\n";
    text << "depth " << system.depth() << ", mode "
         << (system.plan().strict_growth ? "strict" : "relaxed") << ", ambient ["
         << to_string(system.plan().ambient.lo()) << ", "
         << to_string(system.plan().ambient.hi()) << "]\n";
    for (int level = 1; level <= system.depth(); ++level) {
        text << "level " << level << ": " << system.level_count(level) << " pieces, b_"
             << level << " = " << to_string(system.b(level)) << '\n';
    }

    text << "== validation ==\n";
    const ValidationReport validation = validate_balanced(system);
    for (const PropertyCheck& check : validation.checks) {
        text << "  [" << (check.pass ? "pass" : "FAIL") << "] " << check.property;
        if (!check.pass) text << " — " << check.witness;
        text << '\n';
    }
    overall = overall && validation.all_pass();

    text << "== gauge ==\n";
    const GaugeFunction gauge = derive_gauge(system);
    text << gauge.breakpoints().size() << " breakpoints, resolution floor "
         << to_string(gauge.resolution_floor()) << ", tail threshold "
         << to_string(gauge.tail_threshold()) << '\n';
    for (int level = 1; level <= system.depth(); ++level) {
        const Rational value = eval_gauge(gauge, system.b(level));
        Int product = 1;
        for (int k = 0; k < level; ++k) product *= system.plan().branching[k];
        const bool ok = value * Rational(product) == 1;
        text << "  h(b_" << level << ") * a_1..a_" << level << " = "
             << to_string(value * Rational(product)) << (ok ? "" : "  UNEXPECTED") << '\n';
        overall = overall && ok;
    }

    text << "== measure ==\n";
    for (int level = 1; level <= system.depth(); ++level) {
        const Rational cost = cover_cost(canonical_cover(system, level), gauge);
        const bool ok = cost == 1;
        text << "canonical cover, level " << level << ": cost = " << to_string(cost)
             << (ok ? "" : "  UNEXPECTED") << '\n';
        overall = overall && ok;
    }
    if (system.depth() >= 2) {
        // Certification counts at a level strictly below the element
        // diameters, so it needs one level of headroom: join the bounds at
        // depth-1, where 2b_N < b_{N-1} always leaves level N admissible.
        const int join_level = system.depth() - 1;
        const MinCoverResult optimum = min_cover_cost(system, gauge, join_level);
        const LowerBoundCertificate cert =
            certify_lower_bound(system, gauge, canonical_cover(system, join_level));
        const bool join = optimum.cost == 1 && cert.pass && cert.bound >= 1;
        text << "level " << join_level << ": consecutive-run optimum = "
             << to_string(optimum.cost) << ", certified lower bound = "
             << to_string(cert.bound) << '\n';
        text << (join ? "upper = lower = 1\n" : "bounds fail to meet  UNEXPECTED\n");
        overall = overall && join;
    } else {
        text << "bound join skipped (needs depth >= 2)\n";
    }

    text << "== overlap bounds ==\n";
    if (system.plan().strict_growth) {
        for (const AnBoundRow& row : an_bound_table(system)) {
            text << "n = " << row.n << ": " << to_string(row.bound)
                 << " <= " << to_string(row.one_over_n) << ": "
                 << (row.within ? "yes" : "NO") << '\n';
            overall = overall && row.within;
        }
    } else {
        text << "skipped (needs the strict growth mode)\n";
    }

    text << "== interval lengths ==\n";
    Rational previous;
    bool halving = true;
    for (int level = 1; level <= system.depth(); ++level) {
        const Rational measure = lebesgue_outer_measure(system, level);
        text << "level " << level << ": " << to_string(measure) << '\n';
        if (level > 1) halving = halving && Rational(2) * measure <= previous;
        previous = measure;
    }
    text << "halving level to level: " << (halving ? "yes" : "NO") << '\n';
    overall = overall && halving;

    text << "== linear minorant ==\n";
    const Rational c = hull_diameter(system.level_pieces(1));
    const MinorantReport minorant = check_linear_minorant(gauge, c);
    text << "h(x) >= x / " << to_string(c) << " on the resolved domain: "
         << (minorant.pass ? "yes" : "NO") << '\n';
    if (!minorant.pass && minorant.witness_x) {
        text << "first failure at x = " << to_string(*minorant.witness_x) << '\n';
    }
    overall = overall && minorant.pass;

    if (opts.samples > 0) {
        text << "== gauge samples ==\n";
        text << "h(0) = 0\n";
        const int k = opts.samples - 1;
        const Rational lo = gauge.resolution_floor();
        const Rational span = gauge.tail_threshold() - lo;
        for (int i = 0; i < k; ++i) {
            const Rational x = k == 1 ? lo : Rational(lo + span * Rational(i, k - 1));
            text << "h(" << to_string(x) << ") = " << to_string(eval_gauge(gauge, x))
                 << '\n';
        }
    }

    text << "report: " << (overall ? "all checks pass" : "CHECKS FAILED") << '\n';
    std::cout << text.str();
    if (!opts.out.empty()) {
        std::ofstream file(opts.out, std::ios::binary);
        if (!file) throw DomainError("cannot open " + opts.out + " for writing");
        file << text.str();
        std::cout << "wrote " << opts.out << '\n';
    }
    return overall ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-depth balanced interval systems: exact construction, "
                 "gauge, measure bounds, and contraction checks"};
    app.require_subcommand(1);
    std::function<int()> action;

    PlanOpts plan_opts;
    auto* plan_cmd = app.add_subcommand("plan", "validate a recipe, write a plan artifact");
    plan_cmd->add_option("--branching", plan_opts.branching, "a_1,...,a_N")->required();
    plan_cmd->add_option("--ambient", plan_opts.ambient, "ambient interval lo:hi");
    plan_cmd->add_flag("--relaxed", plan_opts.relaxed, "relaxed growth (a_n >= 2)");
    plan_cmd->add_option("--out", plan_opts.out, "output path");
    plan_cmd->callback([&] { action = [&] { return run_plan(plan_opts); }; });

    BuildOpts build_opts;
    auto* build_cmd = app.add_subcommand("build", "build a system, write the system artifact");
    auto* build_plan_opt = build_cmd->add_option("--plan", build_opts.plan_path, "plan artifact");
    auto* build_branching_opt =
        build_cmd->add_option("--branching", build_opts.branching, "a_1,...,a_N");
    build_cmd->add_option("--ambient", build_opts.ambient, "ambient interval lo:hi");
    build_cmd->add_flag("--relaxed", build_opts.relaxed, "relaxed growth (a_n >= 2)");
    build_cmd->add_option("--out", build_opts.out, "output path");
    build_plan_opt->excludes(build_branching_opt);
    build_cmd->callback([&] { action = [&] { return run_build(build_opts); }; });

    ValidateOpts validate_opts;
    auto* validate_cmd = app.add_subcommand("validate", "re-check every balance property");
    validate_cmd->add_option("--system", validate_opts.system_path, "system artifact")->required();
    validate_cmd->add_option("--out", validate_opts.out, "validation artifact path");
    validate_cmd->callback([&] { action = [&] { return run_validate(validate_opts); }; });

    GaugeOpts gauge_opts;
    auto* gauge_cmd = app.add_subcommand("gauge", "derive the gauge, write the gauge artifact");
    gauge_cmd->add_option("--system", gauge_opts.system_path, "system artifact")->required();
    gauge_cmd->add_option("--out", gauge_opts.out, "gauge artifact path");
    gauge_cmd->add_option("--samples", gauge_opts.samples, "print this many sample values");
    gauge_cmd->callback([&] { action = [&] { return run_gauge(gauge_opts); }; });

    CoverCostOpts cover_opts;
    auto* cover_cmd = app.add_subcommand("cover-cost", "price a cover under the gauge");
    cover_cmd->add_option("--system", cover_opts.system_path, "system artifact")->required();
    auto* cover_file_opt = cover_cmd->add_option("--cover", cover_opts.cover_path, "cover artifact");
    auto* cover_level_opt =
        cover_cmd->add_option("--level", cover_opts.level, "canonical cover at this level");
    cover_cmd->add_option("--target", cover_opts.target, "target piece, e.g. 1.2");
    cover_cmd->add_option("--gauge", cover_opts.gauge_path, "gauge artifact (default: derive)");
    cover_cmd->add_option("--out", cover_opts.out, "write the cover used");
    cover_file_opt->excludes(cover_level_opt);
    cover_cmd->callback([&] { action = [&] { return run_cover_cost(cover_opts); }; });

    CertifyOpts certify_opts;
    auto* certify_cmd = app.add_subcommand("certify", "counting certificate for a cover");
    certify_cmd->add_option("--system", certify_opts.system_path, "system artifact");
    certify_cmd->add_option("--cover", certify_opts.cover_path, "cover artifact");
    certify_cmd->add_option("--gauge", certify_opts.gauge_path, "gauge artifact (default: derive)");
    certify_cmd->add_flag("--recheck", certify_opts.recheck, "re-validate the fresh certificate from its fields");
    certify_cmd->add_option("--recheck-only", certify_opts.recheck_only,
                            "re-validate a stored certificate, nothing else");
    certify_cmd->add_option("--out", certify_opts.out, "certificate artifact path");
    certify_cmd->callback([&] { action = [&] { return run_certify(certify_opts); }; });

    MinCoverOpts min_cover_opts;
    auto* min_cover_cmd = app.add_subcommand("min-cover", "optimal consecutive-run cover cost");
    min_cover_cmd->add_option("--system", min_cover_opts.system_path, "system artifact")->required();
    min_cover_cmd->add_option("--level", min_cover_opts.level, "piece level m")->required();
    min_cover_cmd->add_option("--target", min_cover_opts.target, "target piece, e.g. 1");
    min_cover_cmd->add_option("--gauge", min_cover_opts.gauge_path, "gauge artifact (default: derive)");
    min_cover_cmd->add_option("--out", min_cover_opts.out, "result artifact path");
    min_cover_cmd->callback([&] { action = [&] { return run_min_cover(min_cover_opts); }; });

    LebesgueOpts lebesgue_opts;
    auto* lebesgue_cmd = app.add_subcommand("lebesgue", "total interval length per level");
    lebesgue_cmd->add_option("--system", lebesgue_opts.system_path, "system artifact")->required();
    lebesgue_cmd->add_option("--out", lebesgue_opts.out, "result artifact path");
    lebesgue_cmd->callback([&] { action = [&] { return run_lebesgue(lebesgue_opts); }; });

    ContractionOpts contraction_opts;
    auto* contraction_cmd =
        app.add_subcommand("contraction-check", "pairwise check, child intersections, decomposition");
    contraction_cmd->add_option("--system", contraction_opts.system_path, "system artifact")->required();
    auto* map_opt = contraction_cmd->add_option("--map", contraction_opts.map_path, "map artifact");
    auto* random_flag =
        contraction_cmd->add_flag("--random", contraction_opts.random, "generate a seeded map");
    auto* seed_opt = contraction_cmd->add_option("--seed", contraction_opts.seed, "generator seed");
    contraction_cmd->add_option("--target", contraction_opts.target, "restrict to this target piece");
    contraction_cmd->add_option("--m", contraction_opts.m, "restrict to this level");
    contraction_cmd->add_option("--decomposition-depth", contraction_opts.decomposition_depth,
                                "levels to scan (default: full depth)");
    contraction_cmd->add_option("--map-out", contraction_opts.map_out, "write the map used");
    contraction_cmd->add_option("--out", contraction_opts.out, "result artifact path");
    map_opt->excludes(random_flag);
    random_flag->needs(seed_opt);
    contraction_cmd->callback(
        [&] { action = [&] { return run_contraction_check(contraction_opts); }; });

    SweepOpts sweep_opts;
    auto* sweep_cmd = app.add_subcommand("an-sweep", "bound table plus a seeded map sweep");
    sweep_cmd->add_option("--system", sweep_opts.system_path, "system artifact")->required();
    sweep_cmd->add_option("--seed", sweep_opts.seed, "generator seed")->required();
    sweep_cmd->add_option("--maps", sweep_opts.maps, "maps to sweep (default 100)");
    sweep_cmd->add_option("--out", sweep_opts.out, "result artifact path");
    sweep_cmd->callback([&] { action = [&] { return run_an_sweep(sweep_opts); }; });

    F0Opts f0_opts;
    auto* f0_cmd = app.add_subcommand("f0", "translated-family prefix and its measure bound");
    f0_cmd->add_option("--system", f0_opts.system_path, "system artifact")->required();
    f0_cmd->add_option("--count", f0_opts.count, "number of entries")->required();
    f0_cmd->add_option("--out", f0_opts.out, "family artifact path");
    f0_cmd->callback([&] { action = [&] { return run_f0(f0_opts); }; });

    ReportOpts report_opts;
    auto* report_cmd = app.add_subcommand("report", "full text report over one system");
    report_cmd->add_option("--system", report_opts.system_path, "system artifact")->required();
    report_cmd->add_option("--samples", report_opts.samples, "gauge samples (default 64)");
    report_cmd->add_option("--out", report_opts.out, "also write the text here");
    report_cmd->callback([&] { action = [&] { return run_report(report_opts); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action();
    } catch (const BelowResolution& e) {
        std::cout << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const CoverageError& e) {
        std::cout << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const InsufficientDepth& e) {
        std::cout << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const DegenerateElement& e) {
        std::cout << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const WeakContractionViolation& e) {
        std::cout << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const NotCertifiable& e) {
        std::cout << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const GaugeMismatch& e) {
        std::cout << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
