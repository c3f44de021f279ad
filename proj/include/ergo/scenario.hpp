#ifndef ERGO_SCENARIO_HPP
#define ERGO_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ergo/types.hpp"

namespace ergo {

using Json = nlohmann::ordered_json;

struct RunOptions {
  std::string out_dir = ".";
  std::optional<int> horizon;      // overrides per-analysis n / K
  std::optional<double> epsilon;   // overrides per-analysis epsilon
  unsigned long long seed = 0;     // recorded in provenance
  bool write_csv = true;
};

/// Executes every analysis of a scenario in declared order and returns the
/// report document.  Trajectory CSV files are written next to the report
/// under options.out_dir.  Throws ValidationError on malformed scenarios and
/// HypothesisError when a numerical hypothesis fails.
Json run_scenario(const Json& scenario, const RunOptions& options);

/// Schema and invariant diagnostics without running any analysis; an empty
/// list means the scenario is runnable.
std::vector<std::string> validate_scenario(const Json& scenario);

/// Names accepted by the "system" shorthand, with parameter summaries.
std::vector<std::string> list_examples();

/// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string scenario_hash(const Json& scenario);

}  // namespace ergo

#endif  // ERGO_SCENARIO_HPP
