#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "bcs/assembly.hpp"
#include "bcs/contraction.hpp"

// JSON artifact layer. Every artifact is an object with "format" (one of
// the "bcs.*" names below) and "version" (currently 1) followed by the
// payload. Field order is fixed and rationals are serialized as exact
// "p/q" strings, so identical inputs always produce byte-identical files.

namespace bcs {

using Json = nlohmann::ordered_json;

inline constexpr int kArtifactVersion = 1;

// Format names.
inline constexpr const char* kFormatPlan = "bcs.plan";
inline constexpr const char* kFormatSystem = "bcs.system";
inline constexpr const char* kFormatGauge = "bcs.gauge";
inline constexpr const char* kFormatValidation = "bcs.validation";
inline constexpr const char* kFormatCover = "bcs.cover";
inline constexpr const char* kFormatCertificate = "bcs.certificate";
inline constexpr const char* kFormatMap = "bcs.map";
inline constexpr const char* kFormatMinCover = "bcs.min_cover";
inline constexpr const char* kFormatContraction = "bcs.contraction";
inline constexpr const char* kFormatLebesgue = "bcs.lebesgue";
inline constexpr const char* kFormatSweep = "bcs.sweep";
inline constexpr const char* kFormatF0 = "bcs.f0";

// Scalar encodings shared by every payload.
Json rational_json(const Rational& r);                 // "p/q" string
Rational rational_from_json(const Json& j);            // ParseError on bad shape
Json interval_json(const ClosedInterval& iv);          // ["lo", "hi"]
ClosedInterval interval_from_json(const Json& j);
Json multi_index_json(const MultiIndex& idx);          // [i1, i2, ...]
MultiIndex multi_index_from_json(const Json& j);

// Payload encodings.
Json plan_json(const ConstructionPlan& plan);
ConstructionPlan plan_from_json(const Json& j);
Json system_json(const BalancedSystem& system);
BalancedSystem system_from_json(const Json& j);
Json gauge_json(const GaugeFunction& gauge);
GaugeFunction gauge_from_json(const Json& j);
Json validation_json(const ValidationReport& report);
Json cover_json(const Cover& cover);
Cover cover_from_json(const Json& j);
Json certificate_json(const LowerBoundCertificate& cert);
LowerBoundCertificate certificate_from_json(const Json& j);
Json map_json(const FiniteMap& map);
FiniteMap map_from_json(const Json& j);
Json min_cover_json(const MinCoverResult& result, int m,
                    const std::optional<MultiIndex>& target);
Json lebesgue_json(const BalancedSystem& system);  // per-level table
Json sweep_json(const std::vector<AnBoundRow>& rows);
Json f0_json(const TranslatedFamily& family, const F0BoundReport& report);

/// Wraps a payload with the format/version envelope and writes it with a
/// 2-space indent and trailing newline.
void write_artifact(const std::filesystem::path& path, const char* format,
                    Json payload);
Json artifact_envelope(const char* format, Json payload);

/// Reads, parses, and checks the envelope. ParseError on unreadable files,
/// malformed JSON, a different format name, or an unsupported version.
/// Returns the payload.
Json read_artifact(const std::filesystem::path& path, const char* format);

/// Reads and checks the envelope without pinning the format; returns the
/// whole envelope (format + version + payload).
Json read_envelope(const std::filesystem::path& path);

/// One-line convenience for the CLI: render with the canonical settings.
std::string render_artifact(const Json& artifact);

}  // namespace bcs
