#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "crowdflow/model.hpp"
#include "crowdflow/solver.hpp"

namespace crowdflow::io {

enum class OutputKind { Profiles, Regions, Curves, Delta, Scan };

const char* output_kind_name(OutputKind kind);

/// One configured experiment: the system, the Riemann data, the grid and
/// stepping policy, and which artifacts to emit.
struct Scenario {
  std::string name = "scenario";
  SystemParams params;
  State left{3.0, -3.0};
  State right{2.0, -5.0};
  int n_cells = 0;  ///< 0: auto-size from the initial wave speeds
  double dx = 1.0;
  double t_end = 5.0;
  double cfl = 0.45;
  int blocks = 20;
  int block_steps = 1000;
  bool renormalize = true;
  double vacuum_clamp = kVacuumFloor;
  double mobility_floor = kVacuumFloor;
  std::vector<double> scan_times;  ///< instants for the scan output
  std::set<OutputKind> outputs{OutputKind::Profiles};

  solver::RunSpec run_spec() const;
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parse the flat `section.key = value` config format. Unknown keys and
/// malformed lines raise ParseError with the line number; a config that
/// parses but violates a scenario invariant raises ValidationError.
Scenario parse_config(std::string_view text);

/// Inverse of parse_config: parse_config(render_config(s)) == s.
std::string render_config(const Scenario& scenario);

}  // namespace crowdflow::io
