#include "crowdflow/catalog.hpp"

namespace crowdflow::io {

namespace {

Scenario panel(const char* name, double a_exp, State left, State right, double t_end,
               double vacuum_clamp = kVacuumFloor, double dx = 0.25) {
  Scenario s;
  s.name = name;
  s.params.a_exp = a_exp;
  s.params.rho_bar = 5.0;
  s.params.source = SourceTerm::zero();
  s.left = left;
  s.right = right;
  s.t_end = t_end;
  s.dx = dx;
  s.block_steps = 20000;
  s.vacuum_clamp = vacuum_clamp;
  s.outputs = {OutputKind::Profiles};
  return s;
}

Scenario transition(const char* name, double a_exp, State left, State right, double source_value,
                    double t_end, double vacuum_clamp = kVacuumFloor) {
  Scenario s = panel(name, a_exp, left, right, t_end, vacuum_clamp, 0.5);
  s.params.source = SourceTerm::constant(source_value);
  s.blocks = 200;  // dense snapshots so the case flip lands inside a block
  s.block_steps = 150;
  if (a_exp < 0.0) s.mobility_floor = 0.3;  // vacuum phases would stall dt
  return s;
}

Scenario scan(const char* name, double a_exp, double rho_bar, State left,
              std::vector<double> times) {
  Scenario s;
  s.name = name;
  s.params.a_exp = a_exp;
  s.params.rho_bar = rho_bar;
  s.params.source = SourceTerm::constant(0.1);
  s.left = left;
  s.right = left;
  s.t_end = times.empty() ? 0.0 : times.back();
  s.scan_times = std::move(times);
  s.outputs = {OutputKind::Scan};
  return s;
}

}  // namespace

std::vector<Scenario> catalog() {
  std::vector<Scenario> entries;

  // a < -1 (a = -1.5), u_tilde(L) below the asymptote.
  entries.push_back(panel("case01_region_Ia", -1.5, {3, -3}, {2, -5}, 12));
  entries.push_back(panel("case01_region_IIa", -1.5, {3, -3}, {7, -2}, 20));
  entries.push_back(panel("case01_region_IVa", -1.5, {3, -3}, {9, -9}, 60, kVacuumFloor, 0.125));
  entries.push_back(panel("case01_region_VI", -1.5, {3, -3}, {4, 5}, 16));

  // a < -1, u_tilde(L) above.
  entries.push_back(panel("case04_region_I0", -1.5, {3, 3}, {7, 5}, 14));
  entries.push_back(panel("case04_region_II0", -1.5, {3, 3}, {2, 5}, 20));
  entries.push_back(panel("case04_region_IV", -1.5, {3, 3}, {9, -8}, 60, kVacuumFloor, 0.125));
  {
    Scenario v = panel("case04_region_V", -1.5, {3, 3}, {4, -5}, 24, 1e-6);
    v.mobility_floor = 0.8;
    entries.push_back(v);
  }

  // a = -1, below.
  entries.push_back(panel("case07_region_IIIa", -1, {3, -3}, {2, -5}, 16));
  entries.push_back(panel("case07_region_IIIa_wide", -1, {3, -3}, {6, -4}, 16));
  entries.push_back(panel("case07_region_IV", -1, {3, -3}, {9, -9}, 60, kVacuumFloor, 0.125));
  entries.push_back(panel("case07_region_VI", -1, {3, -3}, {6, 4}, 16));

  // a = -1, above.
  entries.push_back(panel("case10_region_III0", -1, {3, 3}, {7, 5}, 16));
  entries.push_back(panel("case10_region_IV", -1, {3, 3}, {9, -9}, 60, kVacuumFloor, 0.125));
  {
    Scenario v = panel("case10_region_V", -1, {3, 3}, {7, -2}, 24, 1e-6);
    v.mobility_floor = 0.5;
    entries.push_back(v);
  }

  // -1 < a < 0 (a = -0.5), below.
  entries.push_back(panel("case13_region_Ia", -0.5, {3, -3}, {7, -2}, 20));
  entries.push_back(panel("case13_region_IIa", -0.5, {3, -3}, {2, -5}, 16));
  entries.push_back(panel("case13_region_IV", -0.5, {3, -3}, {9, -9}, 60, kVacuumFloor, 0.125));
  entries.push_back(panel("case13_region_VI", -0.5, {3, -3}, {7, 5}, 16));

  // -1 < a < 0, above.
  entries.push_back(panel("case16_region_I0", -0.5, {3, 3}, {2, 5}, 16));
  entries.push_back(panel("case16_region_II0", -0.5, {3, 3}, {7, 5}, 20));
  entries.push_back(panel("case16_region_IV", -0.5, {3, 3}, {9, -9}, 60, kVacuumFloor, 0.125));
  entries.push_back(panel("case16_region_V", -0.5, {3, 3}, {7, -2}, 16, 1e-3));

  // a > 0 (a = 0.5), below.
  entries.push_back(panel("case19_region_I0", 0.5, {3, -3}, {2, -5}, 20));
  entries.push_back(panel("case19_region_II0", 0.5, {3, -3}, {7, -5}, 20));
  entries.push_back(panel("case19_region_IV", 0.5, {3, -3}, {9, 9}, 60, kVacuumFloor, 0.125));
  entries.push_back(panel("case19_region_V", 0.5, {3, -3}, {7, 2}, 20, 1e-3));

  // a > 0, above.
  entries.push_back(panel("case22_region_Ia", 0.5, {3, 3}, {7, 5}, 80));
  entries.push_back(panel("case22_region_IIa", 0.5, {3, 3}, {2, 4}, 60));
  entries.push_back(panel("case22_region_V", 0.5, {3, 3}, {1, 5}, 24, 1e-3));
  entries.push_back(panel("case22_region_VI", 0.5, {3, 3}, {4, -4}, 16));

  // Time-dependent case transitions.
  entries.push_back(transition("transition_case01_to_04", -1.5, {3, -3}, {2, -5}, 0.1, 100));
  {
    Scenario tr = transition("transition_case13_to_16", -0.5, {3, -3}, {9, -9}, 0.1, 240);
    tr.dx = 0.25;
    tr.n_cells = 12000;
    tr.block_steps = 400;
    entries.push_back(tr);
  }
  entries.push_back(
      transition("transition_case07_to_10_to_10", -1, {3, -3}, {2, -5}, 0.1, 120, 1e-6));
  entries.push_back(transition("transition_case19_to_22", 0.5, {3, -3}, {2, 3}, 0.05, 160));
  entries.push_back(
      transition("transition_case22_to_19_to_19", 0.5, {3, 3}, {7, 5}, -0.01, 400, 1e-3));

  // Overcompressive-region scans at the captioned parameter sets.
  entries.push_back(scan("case18_scan", -0.5, 3.0, {5, 4}, {0, 3, 6, 9}));
  entries.push_back(scan("case13_scan", -0.5, 5.0, {3, -4}, {0, 20, 40, 50}));
  entries.push_back(scan("case19_scan", 0.5, 5.0, {3, -4}, {0, 15, 30, 45}));

  return entries;
}

std::optional<Scenario> find_scenario(const std::string& name) {
  for (Scenario& s : catalog()) {
    if (s.name == name) return std::move(s);
  }
  return std::nullopt;
}

}  // namespace crowdflow::io
