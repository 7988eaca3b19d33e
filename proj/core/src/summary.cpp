#include "crowdflow/summary.hpp"

#include <json.hpp>

namespace crowdflow::io {

std::string wave_token(classify::WaveType type) {
  using classify::WaveType;
  switch (type) {
    case WaveType::Shock_a: return "Sa";
    case WaveType::Rarefaction_a: return "Ra";
    case WaveType::Contact_a: return "Ca";
    case WaveType::Contact_0: return "C0";
    case WaveType::Vertical_C0: return "C0";
    case WaveType::Delta: return "D";
    case WaveType::Vacuum: return "V";
  }
  return "?";
}

std::string wave_token(solver::SegmentKind kind) {
  using solver::SegmentKind;
  switch (kind) {
    case SegmentKind::Shock_a: return "Sa";
    case SegmentKind::Rarefaction_a: return "Ra";
    case SegmentKind::Contact_a: return "Ca";
    case SegmentKind::Contact_0: return "C0";
    case SegmentKind::Vacuum: return "V";
    case SegmentKind::DeltaCandidate: return "D";
    case SegmentKind::Unknown: return "?";
  }
  return "?";
}

std::vector<std::string> tokens_of(const classify::WavePattern& pattern) {
  std::vector<std::string> tokens;
  for (const auto& w : pattern.waves) tokens.push_back(wave_token(w.type));
  return tokens;
}

std::vector<std::string> tokens_of(const solver::WaveReport& report) {
  std::vector<std::string> tokens;
  for (const auto& s : report.segments) tokens.push_back(wave_token(s.kind));
  return tokens;
}

std::string to_json(const RunSummary& summary) {
  nlohmann::json j;
  j["scenario"] = summary.scenario;
  j["case"] = summary.case_index;
  j["region"] = summary.region_label;
  j["analytic_sequence"] = summary.analytic_sequence;
  j["extracted_sequence"] = summary.extracted_sequence;
  j["sequences_agree"] = summary.sequences_agree;
  auto states = nlohmann::json::array();
  for (const State& s : summary.middle_states) states.push_back({{"rho", s.rho}, {"u_tilde", s.u_tilde}});
  j["middle_states"] = states;
  auto plateaus = nlohmann::json::array();
  for (const State& s : summary.extracted_plateaus)
    plateaus.push_back({{"rho", s.rho}, {"u_tilde", s.u_tilde}});
  j["extracted_plateaus"] = plateaus;
  j["t_final"] = summary.t_final;
  j["total_steps"] = summary.total_steps;
  j["files"] = summary.files;
  if (!summary.notes.empty()) j["notes"] = summary.notes;
  return j.dump(2) + "\n";
}

}  // namespace crowdflow::io
