#pragma once

#include <string>
#include <vector>

#include "crowdflow/classify.hpp"
#include "crowdflow/solver.hpp"

namespace crowdflow::io {

/// Canonical token for a wave ("Sa", "Ra", "Ca", "C0", "D", "V"); the
/// vertical 0-contact maps to "C0".
std::string wave_token(classify::WaveType type);
std::string wave_token(solver::SegmentKind kind);

std::vector<std::string> tokens_of(const classify::WavePattern& pattern);
std::vector<std::string> tokens_of(const solver::WaveReport& report);

/// Structured record of one solve: the case, the analytic construction,
/// what the solver's profile showed, and the emitted files.
struct RunSummary {
  std::string scenario;
  int case_index = 0;
  std::string region_label;
  std::vector<std::string> analytic_sequence;
  std::vector<std::string> extracted_sequence;
  bool sequences_agree = false;
  std::vector<State> middle_states;
  std::vector<State> extracted_plateaus;
  double t_final = 0.0;
  long total_steps = 0;
  std::vector<std::string> files;
  std::string notes;
};

std::string to_json(const RunSummary& summary);

}  // namespace crowdflow::io
