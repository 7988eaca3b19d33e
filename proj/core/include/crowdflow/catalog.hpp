#pragma once

#include <optional>
#include <vector>

#include "crowdflow/scenario.hpp"

namespace crowdflow::io {

/// One scenario per captioned figure panel of the 24-case study (left/right
/// states, exponent regimes, zero and nonzero sources), plus the case
/// transition studies and the overcompressive-region scans.
std::vector<Scenario> catalog();

std::optional<Scenario> find_scenario(const std::string& name);

}  // namespace crowdflow::io
