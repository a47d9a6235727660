#pragma once

#include <optional>
#include <string>
#include <vector>

#include "condenser/cli/config.hpp"

namespace condenser::cli {

struct Scenario {
  std::string name;
  std::string description;
  json config;  // a complete, valid run config
};

const std::vector<Scenario>& scenario_catalog();
std::optional<Scenario> find_scenario(const std::string& name);

}  // namespace condenser::cli
