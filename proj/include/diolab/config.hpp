#ifndef DIOLAB_CONFIG_HPP
#define DIOLAB_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "diolab/experiments.hpp"
#include "diolab/geometry.hpp"

namespace diolab {

// Parsers from the JSON config schema (see README) to domain types.
Form parse_form(const nlohmann::json& j, int n);
Psi parse_psi(const nlohmann::json& j);
Norm parse_norm(const nlohmann::json& j);
PointSet parse_points(const nlohmann::json& j);
GroupKind parse_group(const nlohmann::json& j);
CriterionFamily parse_family(const nlohmann::json& j, const Form& form);

struct RunResult {
  int exit_code = 0;       // 0 ok, 2 validation, 3 budget, 4 failed check
  std::string summary_json;
  std::string csv;         // tabular rows; empty if the experiment has none
  std::string plot_csv;    // (T, ratio) series when applicable
};

// Validates and dispatches one experiment config.  Never throws; failures
// are reported through exit_code and an "error" field in the summary.
RunResult run_experiment(const std::string& config_text,
                         std::optional<std::uint64_t> seed_override, bool check);

} // namespace diolab

#endif
