#pragma once

#include "kemeny/kemeny.hpp"
#include "kemeny/mc_oracle.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kemeny {

inline constexpr std::string_view kArtifactVersion = "1.0.0";

/// Input chain description. Matrix entries may be JSON numbers or strings
/// holding a decimal or an exact ratio such as "2/3".
struct ChainDocument {
    std::string name;
    std::string description;
    std::vector<std::string> states;
    Matrix transition_matrix;
    /// Accepted for completeness; no computed quantity depends on it.
    std::optional<std::vector<double>> initial_distribution;
};

/// Throws Error(ParseError) on malformed input.
ChainDocument parse_chain_document(std::string_view text);
ChainDocument load_chain_document(const std::filesystem::path& path);

/// "0.25", "1e-3" or "p/q".
double parse_probability(std::string_view text);

struct EmbeddingBlock {
    std::vector<std::vector<double>> vertices; ///< columns of V, one per state
    std::vector<double> circumcenter;
    std::vector<double> lemoine;
};

struct McBlock {
    std::uint64_t seed = 0;
    McEstimate kemeny;
    double deviation = 0.0; ///< |mean - K_commute|
    double z_score = 0.0;
};

/// Everything a run reports, with the deviation of each identity next to
/// the values it relates.
struct ResultDocument {
    std::string version{kArtifactVersion};
    std::string name;
    std::vector<std::string> states;
    Admissibility admissibility;
    Vector pi;
    Matrix hitting_times;
    Matrix commute_times;
    KemenyReport kemeny;
    GeometryReport geometry;
    Diagnostics diagnostics;
    Tolerances tolerances;
    std::optional<EmbeddingBlock> embedding;
    std::optional<McBlock> mc;
};

ResultDocument make_result_document(const FullReport& report, std::string name = {});
EmbeddingBlock make_embedding_block(const FullReport& report);
McBlock make_mc_block(const FullReport& report, const McEstimate& est, std::uint64_t seed);

nlohmann::json to_json(const ResultDocument& doc);
ResultDocument result_document_from_json(const nlohmann::json& j);

/// Re-checks every identity from the numbers stored in the document alone.
/// Keys name the identity; values are pass/fail at the document's
/// tolerances.
std::map<std::string, bool> verify_result_document(const ResultDocument& doc);

/// Human-readable report: 6 significant digits for values, scientific
/// notation for deviations.
std::string render_report(const ResultDocument& doc);

} // namespace kemeny
