#include "bcs/serialize.hpp"

#include <fstream>
#include <utility>

namespace bcs {

namespace {

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) {
        throw ParseError(std::string("missing field \"") + name + "\"");
    }
    return j.at(name);
}

long long int_field(const Json& j, const char* name) {
    const Json& f = field(j, name);
    if (!f.is_number_integer()) {
        throw ParseError(std::string("field \"") + name + "\" must be an integer");
    }
    return f.get<long long>();
}

bool bool_field(const Json& j, const char* name) {
    const Json& f = field(j, name);
    if (!f.is_boolean()) {
        throw ParseError(std::string("field \"") + name + "\" must be a boolean");
    }
    return f.get<bool>();
}

std::string string_field(const Json& j, const char* name) {
    const Json& f = field(j, name);
    if (!f.is_string()) {
        throw ParseError(std::string("field \"") + name + "\" must be a string");
    }
    return f.get<std::string>();
}

// Counts wider than 64 bits travel as decimal strings.
Int big_field(const Json& j, const char* name) {
    const std::string text = string_field(j, name);
    try {
        return Int(text);
    } catch (const std::exception&) {
        throw ParseError(std::string("field \"") + name + "\" holds \"" + text +
                         "\", not a decimal integer");
    }
}

Rational rational_field(const Json& j, const char* name) {
    return rational_from_json(field(j, name));
}

const Json& array_field(const Json& j, const char* name) {
    const Json& f = field(j, name);
    if (!f.is_array()) {
        throw ParseError(std::string("field \"") + name + "\" must be an array");
    }
    return f;
}

}  // namespace

Json rational_json(const Rational& r) { return Json(to_string(r)); }

Rational rational_from_json(const Json& j) {
    if (!j.is_string()) {
        throw ParseError("expected a rational \"p/q\" string, got " + j.dump());
    }
    return parse_rational(j.get<std::string>());
}

Json interval_json(const ClosedInterval& iv) {
    return Json::array({to_string(iv.lo()), to_string(iv.hi())});
}

ClosedInterval interval_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw ParseError("expected an interval as [\"lo\", \"hi\"], got " + j.dump());
    }
    const Rational lo = rational_from_json(j[0]);
    const Rational hi = rational_from_json(j[1]);
    try {
        return ClosedInterval(lo, hi);
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

Json multi_index_json(const MultiIndex& idx) {
    Json arr = Json::array();
    for (int c : idx.v) arr.push_back(c);
    return arr;
}

MultiIndex multi_index_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("expected a non-empty coordinate array, got " + j.dump());
    }
    MultiIndex idx;
    for (const auto& e : j) {
        if (!e.is_number_integer() || e.get<long long>() < 1) {
            throw ParseError("multi-index coordinates must be integers >= 1, got " +
                             j.dump());
        }
        idx.v.push_back(static_cast<int>(e.get<long long>()));
    }
    return idx;
}

Json plan_json(const ConstructionPlan& plan) {
    Json j;
    j["branching"] = plan.branching;
    j["ambient"] = interval_json(plan.ambient);
    j["strict_growth"] = plan.strict_growth;
    return j;
}

ConstructionPlan plan_from_json(const Json& j) {
    ConstructionPlan plan;
    const Json& branching = array_field(j, "branching");
    if (branching.empty()) throw ParseError("\"branching\" must be non-empty");
    plan.branching.clear();
    for (const auto& e : branching) {
        if (!e.is_number_integer()) {
            throw ParseError("branching entries must be integers, got " + e.dump());
        }
        plan.branching.push_back(e.get<long long>());
    }
    plan.ambient = interval_from_json(field(j, "ambient"));
    plan.strict_growth = bool_field(j, "strict_growth");
    return plan;
}

Json system_json(const BalancedSystem& system) {
    Json j;
    j["plan"] = plan_json(system.plan());

    Json separations = Json::array();
    for (int n = 1; n <= system.depth(); ++n) {
        separations.push_back(to_string(system.b(n)));
    }
    j["separations"] = separations;

    Json index_table = Json::array();
    for (const auto& [n, idx] : system.phi().table()) {
        Json entry;
        entry["n"] = n;
        entry["index"] = multi_index_json(idx);
        index_table.push_back(std::move(entry));
    }
    j["index_table"] = index_table;

    Json pieces = Json::array();
    for (int level = 1; level <= system.depth(); ++level) {
        for (const auto& [idx, piece] : elementary_pieces(system, level)) {
            Json record;
            record["index"] = multi_index_json(idx);
            record["interval"] = interval_json(piece);
            pieces.push_back(std::move(record));
        }
    }
    j["pieces"] = pieces;
    return j;
}

BalancedSystem system_from_json(const Json& j) {
    ConstructionPlan plan = plan_from_json(field(j, "plan"));
    try {
        plan.validate();
    } catch (const InvalidPlan& e) {
        throw ParseError(std::string("system artifact carries an invalid plan: ") +
                         e.what());
    }
    const int depth = plan.depth();

    std::vector<Rational> b;
    for (const auto& e : array_field(j, "separations")) {
        b.push_back(rational_from_json(e));
    }

    std::map<int, MultiIndex> table;
    for (const auto& e : array_field(j, "index_table")) {
        const int n = static_cast<int>(int_field(e, "n"));
        if (!table.emplace(n, multi_index_from_json(field(e, "index"))).second) {
            throw ParseError("index table repeats n = " + std::to_string(n));
        }
    }

    std::vector<std::vector<ClosedInterval>> levels;
    std::vector<std::vector<char>> filled;
    long long count = 1;
    for (int level = 1; level <= depth; ++level) {
        count *= plan.branching[level - 1];
        levels.emplace_back(static_cast<std::size_t>(count),
                            ClosedInterval(Rational(0), Rational(0)));
        filled.emplace_back(static_cast<std::size_t>(count), 0);
    }
    for (const auto& record : array_field(j, "pieces")) {
        const MultiIndex idx = multi_index_from_json(field(record, "index"));
        const int level = idx.length();
        if (level < 1 || level > depth) {
            throw ParseError("piece index " + idx.str() + " outside levels 1.." +
                             std::to_string(depth));
        }
        long long rank = 0;
        try {
            rank = level_rank(plan.branching, idx);
        } catch (const Error& e) {
            throw ParseError(std::string("piece index ") + idx.str() + " rejected: " +
                             e.what());
        }
        auto& slot_filled = filled[static_cast<std::size_t>(level - 1)]
                                  [static_cast<std::size_t>(rank)];
        if (slot_filled) {
            throw ParseError("piece " + idx.str() + " appears twice");
        }
        slot_filled = 1;
        levels[static_cast<std::size_t>(level - 1)][static_cast<std::size_t>(rank)] =
            interval_from_json(field(record, "interval"));
    }
    for (int level = 1; level <= depth; ++level) {
        const auto& level_filled = filled[static_cast<std::size_t>(level - 1)];
        for (std::size_t rank = 0; rank < level_filled.size(); ++rank) {
            if (!level_filled[rank]) {
                throw ParseError("level " + std::to_string(level) + " misses piece " +
                                 level_unrank(plan.branching, level,
                                              static_cast<long long>(rank))
                                     .str());
            }
        }
    }

    try {
        return BalancedSystem::from_parts(std::move(plan), std::move(b),
                                          IndexFunction(std::move(table)),
                                          std::move(levels));
    } catch (const Error& e) {
        throw ParseError(std::string("system artifact rejected: ") + e.what());
    }
}

Json gauge_json(const GaugeFunction& gauge) {
    Json j;
    Json breakpoints = Json::array();
    for (const auto& [x, y] : gauge.breakpoints()) {
        breakpoints.push_back(Json::array({to_string(x), to_string(y)}));
    }
    j["breakpoints"] = breakpoints;
    j["depth"] = gauge.depth();
    return j;
}

GaugeFunction gauge_from_json(const Json& j) {
    std::vector<std::pair<Rational, Rational>> breakpoints;
    for (const auto& e : array_field(j, "breakpoints")) {
        if (!e.is_array() || e.size() != 2) {
            throw ParseError("breakpoints must be [\"x\", \"h(x)\"] pairs, got " +
                             e.dump());
        }
        breakpoints.emplace_back(rational_from_json(e[0]), rational_from_json(e[1]));
    }
    const int depth = static_cast<int>(int_field(j, "depth"));
    try {
        return GaugeFunction(std::move(breakpoints), depth);
    } catch (const DomainError& e) {
        throw ParseError(std::string("gauge artifact rejected: ") + e.what());
    }
}

Json validation_json(const ValidationReport& report) {
    Json j;
    j["all_pass"] = report.all_pass();
    Json checks = Json::array();
    for (const PropertyCheck& check : report.checks) {
        Json entry;
        entry["property"] = check.property;
        entry["pass"] = check.pass;
        entry["witness"] = check.witness;
        checks.push_back(std::move(entry));
    }
    j["checks"] = checks;
    return j;
}

Json cover_json(const Cover& cover) {
    Json j;
    j["target"] = cover.target ? multi_index_json(*cover.target) : Json(nullptr);
    Json elements = Json::array();
    for (const ClosedInterval& element : cover.elements) {
        elements.push_back(interval_json(element));
    }
    j["elements"] = elements;
    return j;
}

Cover cover_from_json(const Json& j) {
    Cover cover;
    const Json& target = field(j, "target");
    if (!target.is_null()) cover.target = multi_index_from_json(target);
    for (const auto& e : array_field(j, "elements")) {
        cover.elements.push_back(interval_from_json(e));
    }
    return cover;
}

Json certificate_json(const LowerBoundCertificate& cert) {
    Json j;
    j["m"] = cert.m;
    j["level_product"] = cert.level_product.str();
    j["target_piece_count"] = cert.target_piece_count.str();
    j["claimed_measure"] = to_string(cert.claimed_measure);
    Json elements = Json::array();
    for (const CertificateElement& ce : cert.elements) {
        Json entry;
        entry["diameter"] = to_string(ce.diameter);
        entry["gauge_value"] = to_string(ce.gauge_value);
        entry["s"] = ce.s;
        elements.push_back(std::move(entry));
    }
    j["elements"] = elements;
    j["total_s"] = cert.total_s.str();
    j["bound"] = to_string(cert.bound);
    j["pass"] = cert.pass;
    j["witness"] = cert.witness;
    return j;
}

LowerBoundCertificate certificate_from_json(const Json& j) {
    LowerBoundCertificate cert;
    cert.m = static_cast<int>(int_field(j, "m"));
    cert.level_product = big_field(j, "level_product");
    cert.target_piece_count = big_field(j, "target_piece_count");
    cert.claimed_measure = rational_field(j, "claimed_measure");
    for (const auto& e : array_field(j, "elements")) {
        CertificateElement ce;
        ce.diameter = rational_field(e, "diameter");
        ce.gauge_value = rational_field(e, "gauge_value");
        ce.s = int_field(e, "s");
        cert.elements.push_back(std::move(ce));
    }
    cert.total_s = big_field(j, "total_s");
    cert.bound = rational_field(j, "bound");
    cert.pass = bool_field(j, "pass");
    cert.witness = string_field(j, "witness");
    return cert;
}

Json map_json(const FiniteMap& map) {
    Json j;
    j["provenance"] = map.provenance;
    Json points = Json::array();
    for (const auto& [x, fx] : map.points) {
        points.push_back(Json::array({to_string(x), to_string(fx)}));
    }
    j["points"] = points;
    return j;
}

FiniteMap map_from_json(const Json& j) {
    std::vector<std::pair<Rational, Rational>> points;
    for (const auto& e : array_field(j, "points")) {
        if (!e.is_array() || e.size() != 2) {
            throw ParseError("map points must be [\"x\", \"f(x)\"] pairs, got " +
                             e.dump());
        }
        points.emplace_back(rational_from_json(e[0]), rational_from_json(e[1]));
    }
    return FiniteMap::from_points(std::move(points), string_field(j, "provenance"));
}

Json min_cover_json(const MinCoverResult& result, int m,
                    const std::optional<MultiIndex>& target) {
    Json j;
    j["m"] = m;
    j["target"] = target ? multi_index_json(*target) : Json(nullptr);
    j["cost"] = to_string(result.cost);
    j["oracle_sound"] = result.oracle_sound;
    j["note"] = result.note;
    return j;
}

Json lebesgue_json(const BalancedSystem& system) {
    Json j;
    Json levels = Json::array();
    Rational previous;
    bool halving_ok = true;
    for (int level = 1; level <= system.depth(); ++level) {
        const Rational measure = lebesgue_outer_measure(system, level);
        Json entry;
        entry["level"] = level;
        entry["measure"] = to_string(measure);
        if (level > 1) {
            const bool halved = Rational(2) * measure <= previous;
            entry["halved"] = halved;
            halving_ok = halving_ok && halved;
        }
        levels.push_back(std::move(entry));
        previous = measure;
    }
    j["levels"] = levels;
    j["halving_ok"] = halving_ok;
    return j;
}

Json sweep_json(const std::vector<AnBoundRow>& rows) {
    Json j;
    Json table = Json::array();
    for (const AnBoundRow& row : rows) {
        Json entry;
        entry["n"] = row.n;
        entry["bound"] = to_string(row.bound);
        entry["one_over_n"] = to_string(row.one_over_n);
        entry["within"] = row.within;
        table.push_back(std::move(entry));
    }
    j["rows"] = table;
    return j;
}

Json f0_json(const TranslatedFamily& family, const F0BoundReport& report) {
    Json j;
    Json entries = Json::array();
    for (std::size_t k = 0; k < family.entries.size(); ++k) {
        const TranslatedEntry& entry = family.entries[k];
        Json e;
        e["n"] = entry.n;
        e["star_piece"] = multi_index_json(entry.star_piece);
        e["offset"] = to_string(entry.offset);
        e["declared"] = to_string(entry.expected_measure);
        if (k < report.entries.size()) {
            e["recomputed"] = to_string(report.entries[k].recomputed);
            e["match"] = report.entries[k].match;
        }
        Json intervals = Json::array();
        for (const ClosedInterval& interval : entry.intervals) {
            intervals.push_back(interval_json(interval));
        }
        e["intervals"] = intervals;
        entries.push_back(std::move(e));
    }
    j["entries"] = entries;
    j["partial_measure_bound"] = to_string(family.partial_measure_bound);
    j["declared_total"] = to_string(report.declared_total);
    j["recomputed_total"] = to_string(report.recomputed_total);
    j["geometric_ceiling"] = to_string(report.geometric_ceiling);
    j["pass"] = report.pass;
    return j;
}

Json artifact_envelope(const char* format, Json payload) {
    Json envelope;
    envelope["format"] = format;
    envelope["version"] = kArtifactVersion;
    envelope["payload"] = std::move(payload);
    return envelope;
}

std::string render_artifact(const Json& artifact) { return artifact.dump(2) + "\n"; }

void write_artifact(const std::filesystem::path& path, const char* format,
                    Json payload) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DomainError("cannot open " + path.string() + " for writing");
    }
    out << render_artifact(artifact_envelope(format, std::move(payload)));
    out.close();
    if (!out) {
        throw DomainError("failed while writing " + path.string());
    }
}

Json read_envelope(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    Json envelope = Json::parse(in, nullptr, false);
    if (envelope.is_discarded()) {
        throw ParseError("malformed JSON in " + path.string());
    }
    if (!envelope.is_object() || !envelope.contains("format") ||
        !envelope["format"].is_string()) {
        throw ParseError(path.string() + " carries no format marker");
    }
    if (!envelope.contains("version") || !envelope["version"].is_number_integer()) {
        throw ParseError(path.string() + " carries no artifact version");
    }
    if (envelope["version"].get<int>() != kArtifactVersion) {
        throw ParseError(path.string() + " has artifact version " +
                         envelope["version"].dump() + "; this build reads version " +
                         std::to_string(kArtifactVersion));
    }
    if (!envelope.contains("payload") || !envelope["payload"].is_object()) {
        throw ParseError(path.string() + " carries no payload object");
    }
    return envelope;
}

Json read_artifact(const std::filesystem::path& path, const char* format) {
    Json envelope = read_envelope(path);
    const std::string found = envelope["format"].get<std::string>();
    if (found != format) {
        throw ParseError(path.string() + " holds a \"" + found +
                         "\" artifact; expected \"" + format + "\"");
    }
    return envelope["payload"];
}

}  // namespace bcs
