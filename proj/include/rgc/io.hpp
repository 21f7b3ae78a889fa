#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "rgc/experiments.hpp"

namespace rgc {

/// Point CSV: optional `# dim=<d> seed=<s> density=<name>` header, then one
/// comma-separated point per row. Values are written with 17 significant digits.
void write_point_csv(const PointCloud& cloud, std::ostream& out);
PointCloud read_point_csv(std::istream& in);

/// Complex file: `# n=<v> max_dim=<m> type=<rips|cech> r=<r>` header, then
/// one face per line as space-separated sorted vertex indices.
void write_complex(const SimplicialComplex& complex, std::ostream& out);
SimplicialComplex read_complex(std::istream& in);

/// Pattern edge list: optional `# n=<v>` header, then `a b` per line.
PatternGraph read_pattern(std::istream& in);

/// Thrown for malformed input files.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const BettiProfile& profile);
nlohmann::json to_json(const CriticalCensus& census);
nlohmann::json to_json(const CensusReport& report);
nlohmann::json to_json(const RadiusRule& rule);
nlohmann::json to_json(const SweepConfig& config);

RadiusRule radius_rule_from_json(const nlohmann::json& j);
/// Reads SweepConfig fields present in `j` over `base`; unknown keys are rejected.
SweepConfig sweep_config_from_json(const nlohmann::json& j, SweepConfig base = {});

/// Config echo with generator name and version, plus per-cell counts and failures.
nlohmann::json sweep_sidecar(const SweepResult& result);

}  // namespace rgc
