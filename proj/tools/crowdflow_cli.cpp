// Command-line front end: scenario configs in, CSV/SVG artifacts out.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "crowdflow/catalog.hpp"
#include "crowdflow/classify.hpp"
#include "crowdflow/csv.hpp"
#include "crowdflow/delta.hpp"
#include "crowdflow/scenario.hpp"
#include "crowdflow/solver.hpp"
#include "crowdflow/summary.hpp"
#include "crowdflow/svg.hpp"

namespace fs = std::filesystem;
using namespace crowdflow;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUnclassifiable = 4;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::vector<double> times;
  int grid_n = 0;
  std::vector<double> window;  // RHO_MAX,U_MIN,U_MAX
  bool strict = false;
  bool no_renormalize = false;
  unsigned long seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
  auto* opt = cmd->add_option("--config", args.config_path, "scenario config file");
  if (config_required) opt->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--time", args.times, "time instant (repeatable)");
  cmd->add_option("--grid", args.grid_n, "grid resolution override");
  cmd->add_option("--window", args.window, "state window RHO_MAX,U_MIN,U_MAX")->delimiter(',');
  cmd->add_flag("--strict", args.strict, "nonzero exit on unclassifiable regions");
  cmd->add_flag("--no-renormalize", args.no_renormalize, "disable plateau renormalization");
  cmd->add_option("--seed", args.seed, "seed for randomized sweeps");
}

io::Scenario load_scenario(const CommonArgs& args) {
  std::ifstream in(args.config_path);
  if (!in) throw ValidationError("cannot open config '" + args.config_path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  io::Scenario scenario = io::parse_config(buffer.str());
  if (args.no_renormalize) scenario.renormalize = false;
  if (!args.times.empty()) scenario.scan_times = args.times;
  return scenario;
}

void write_file(const fs::path& path, const std::string& content,
                std::vector<std::string>* manifest = nullptr) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path);
  out << content;
  if (manifest) manifest->push_back(path.string());
}

classify::Window window_of(const CommonArgs& args) {
  classify::Window w;
  if (args.window.size() == 3) {
    w.rho_max = args.window[0];
    w.u_min = args.window[1];
    w.u_max = args.window[2];
  }
  return w;
}

std::string profiles_svg(const std::vector<solver::Snapshot>& snapshots) {
  io::svg::Axis rho_axis, u_axis;
  rho_axis.title = "density";
  rho_axis.x_label = "x/t";
  rho_axis.y_label = "rho";
  u_axis.title = "transformed velocity";
  u_axis.x_label = "x/t";
  u_axis.y_label = "u_tilde";
  const auto& palette = io::svg::palette();
  for (std::size_t s = 0; s < snapshots.size(); ++s) {
    const auto& snap = snapshots[s];
    if (snap.t <= 0.0 && snapshots.size() > 1 && s == 0) continue;
    io::svg::Series rho_series, u_series;
    rho_series.color = u_series.color = palette[s % palette.size()];
    rho_series.width = u_series.width = 0.6 + 1.6 * s / std::max<std::size_t>(snapshots.size() - 1, 1);
    for (std::size_t i = 0; i < snap.x.size(); ++i) {
      const double xi = snap.t > 0.0 ? snap.x[i] / snap.t : snap.x[i];
      rho_series.points.push_back({xi, snap.rho[i]});
      u_series.points.push_back({xi, snap.u_tilde[i]});
    }
    rho_axis.series.push_back(std::move(rho_series));
    u_axis.series.push_back(std::move(u_series));
  }
  return io::svg::render({rho_axis, u_axis});
}

std::string region_svg(const classify::RegionMap& map) {
  io::svg::Axis axis;
  axis.title = "state-space regions";
  axis.x_label = "rho";
  axis.y_label = "u_tilde";
  axis.cells.x = map.rho;
  axis.cells.y = map.u;
  axis.cells.cls.resize(map.cells.size());
  for (std::size_t i = 0; i < map.cells.size(); ++i)
    axis.cells.cls[i] = static_cast<int>(map.cells[i].region);
  for (const auto& boundary : map.boundaries) {
    io::svg::Series series;
    series.label = boundary.label;
    series.points = boundary.points;
    series.color = "#222222";
    series.markers = boundary.label == "delta frontier";
    series.dashed = boundary.label == "asymptote" || boundary.label == "A(t)";
    axis.series.push_back(std::move(series));
  }
  return io::svg::render({axis});
}

std::string scan_svg(const delta::ScanGrid& grid) {
  io::svg::Axis axis;
  axis.title = "overcompressive region";
  axis.x_label = "rho";
  axis.y_label = "u_tilde";
  axis.cells.x = grid.rho;
  axis.cells.y = grid.u;
  axis.cells.cls.resize(grid.cells.size());
  for (std::size_t i = 0; i < grid.cells.size(); ++i)
    axis.cells.cls[i] = grid.cells[i] == delta::CellState::Inside ? 1 : -1;
  return io::svg::render({axis});
}

int cmd_solve(const CommonArgs& args) {
  io::Scenario scenario = load_scenario(args);
  if (args.grid_n > 0) scenario.n_cells = args.grid_n;
  const fs::path out_dir(args.out_dir);

  io::RunSummary summary;
  summary.scenario = scenario.name;
  try {
    summary.case_index = classify::case_id(scenario.params, scenario.left, 0.0).index;
  } catch (const FullDegeneracy&) {
    summary.notes = "left state fully degenerate at t = 0";
  }

  classify::WavePattern pattern;
  try {
    pattern = classify::classify_region(scenario.left, scenario.right, scenario.params, 0.0);
    summary.region_label = pattern.region_label();
    summary.analytic_sequence = io::tokens_of(pattern);
    summary.middle_states = pattern.middle_states;
  } catch (const Error& e) {
    summary.notes = e.what();
  }

  const solver::RunResult result = solver::run(scenario.run_spec());
  const solver::WaveReport report = solver::extract_wave_structure(
      result.snapshots.back(), scenario.left, scenario.right, scenario.params);
  summary.extracted_sequence = io::tokens_of(report);
  summary.extracted_plateaus = report.plateaus;
  summary.sequences_agree = summary.analytic_sequence == summary.extracted_sequence;
  summary.t_final = result.snapshots.back().t;
  summary.total_steps = result.total_steps;

  std::ostringstream csv;
  io::write_profiles_csv(csv, result.snapshots);
  write_file(out_dir / (scenario.name + "_profiles.csv"), csv.str(), &summary.files);
  write_file(out_dir / (scenario.name + "_profiles.svg"), profiles_svg(result.snapshots),
             &summary.files);

  if (scenario.outputs.count(io::OutputKind::Delta) && scenario.params.a_exp != -1.0) {
    try {
      const auto traj =
          scenario.params.a_exp < 0.0
              ? delta::integrate_delta_neg(scenario.left, scenario.right, scenario.params,
                                           scenario.t_end)
              : delta::integrate_delta_pos(scenario.left, scenario.right, scenario.params,
                                           scenario.t_end);
      std::ostringstream tcsv;
      io::write_trajectory_csv(tcsv, traj);
      write_file(out_dir / (scenario.name + "_delta.csv"), tcsv.str(), &summary.files);
    } catch (const Error& e) {
      summary.notes += std::string(summary.notes.empty() ? "" : "; ") + "delta: " + e.what();
    }
  }

  write_file(out_dir / (scenario.name + "_summary.json"), io::to_json(summary), &summary.files);
  std::cout << io::to_json(summary);
  if (args.strict && summary.region_label.empty()) return kExitUnclassifiable;
  return 0;
}

int cmd_regions(const CommonArgs& args) {
  io::Scenario scenario = load_scenario(args);
  const int n = args.grid_n > 0 ? args.grid_n : 48;
  const double t = args.times.empty() ? 0.0 : args.times.front();
  const classify::RegionMap map =
      classify::region_map(scenario.left, scenario.params, t, window_of(args), n);
  const fs::path out_dir(args.out_dir);
  std::ostringstream csv;
  io::write_region_csv(csv, map);
  write_file(out_dir / (scenario.name + "_regions.csv"), csv.str());
  write_file(out_dir / (scenario.name + "_regions.svg"), region_svg(map));
  if (args.strict) {
    for (const auto& cell : map.cells) {
      if (cell.region == classify::Region::Unclassifiable) return kExitUnclassifiable;
    }
  }
  return 0;
}

int cmd_curves(const CommonArgs& args) {
  io::Scenario scenario = load_scenario(args);
  const double t = args.times.empty() ? 0.0 : args.times.front();
  const classify::Window w = window_of(args);
  std::vector<double> grid;
  const int n = args.grid_n > 0 ? args.grid_n : 257;
  for (int i = 0; i <= n; ++i)
    grid.push_back(w.rho_min + (w.rho_max - w.rho_min) * i / double(n));
  std::vector<waves::ContactBranch> branches;
  if (std::abs(scenario.left.rho - scenario.params.rho_bar) <= kDegeneracyTol) {
    branches.push_back(waves::contact_vertical(scenario.left, scenario.right.u_tilde));
  } else {
    branches = waves::contact_branches(scenario.left, t, scenario.params, grid);
  }
  const fs::path out_dir(args.out_dir);
  std::ostringstream csv;
  io::write_curves_csv(csv, branches);
  write_file(out_dir / (scenario.name + "_curves.csv"), csv.str());

  io::svg::Axis axis;
  axis.title = "wave curves";
  axis.x_label = "rho";
  axis.y_label = "u_tilde";
  const auto& palette = io::svg::palette();
  for (std::size_t b = 0; b < branches.size(); ++b) {
    io::svg::Series series;
    series.color = palette[b % palette.size()];
    for (const auto& s : branches[b].samples) {
      if (std::abs(s[1]) < 1e3) series.points.push_back(s);
    }
    axis.series.push_back(std::move(series));
  }
  io::svg::Series locus;
  locus.dashed = true;
  locus.points.push_back({w.rho_min, scenario.left.u_tilde});
  locus.points.push_back({w.rho_max, scenario.left.u_tilde});
  axis.series.push_back(std::move(locus));
  write_file(out_dir / (scenario.name + "_curves.svg"), io::svg::render({axis}));
  return 0;
}

int cmd_delta(const CommonArgs& args) {
  io::Scenario scenario = load_scenario(args);
  const double t_end = args.times.empty() ? scenario.t_end : args.times.back();
  delta::DeltaTrajectory traj;
  try {
    traj = scenario.params.a_exp < 0.0
               ? delta::integrate_delta_neg(scenario.left, scenario.right, scenario.params, t_end)
               : delta::integrate_delta_pos(scenario.left, scenario.right, scenario.params, t_end);
  } catch (const Error& e) {
    std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
    return kExitNumerical;
  }
  std::ostringstream csv;
  io::write_trajectory_csv(csv, traj);
  write_file(fs::path(args.out_dir) / (scenario.name + "_delta.csv"), csv.str());
  return 0;
}

int cmd_scan(const CommonArgs& args) {
  io::Scenario scenario = load_scenario(args);
  std::vector<double> times = args.times.empty() ? scenario.scan_times : args.times;
  if (times.empty()) times = {0.0};
  const classify::Window w = window_of(args);
  const fs::path out_dir(args.out_dir);
  for (double t : times) {
    delta::ScanRequest req;
    req.t = t;
    req.rho_min = w.rho_min;
    req.rho_max = w.rho_max;
    req.u_min = w.u_min;
    req.u_max = w.u_max;
    req.n_rho = req.n_u = args.grid_n > 0 ? args.grid_n : 40;
    const delta::ScanGrid grid = delta::scan_overcompressive(scenario.left, scenario.params, req);
    std::ostringstream name;
    name << scenario.name << "_scan_t" << t;
    std::ostringstream csv;
    io::write_scan_csv(csv, grid, t);
    write_file(out_dir / (name.str() + ".csv"), csv.str());
    write_file(out_dir / (name.str() + ".svg"), scan_svg(grid));
  }
  return 0;
}

int cmd_case_id(const CommonArgs& args, double horizon) {
  io::Scenario scenario = load_scenario(args);
  const classify::CaseId id = classify::case_id(scenario.params, scenario.left, 0.0);
  std::cout << "Case " << id.index;
  const auto times = classify::case_transition_times(scenario.params, scenario.left, horizon);
  double t_prev = 0.0;
  for (double t : times) {
    (void)t_prev;
    const classify::CaseId next = classify::case_id(scenario.params, scenario.left, t + 1e-9);
    std::cout << "; transition to Case " << next.index << " at t=" << t;
    t_prev = t;
  }
  std::cout << "\n";
  return 0;
}

int cmd_catalog(const std::string& write_dir, bool run_all, const CommonArgs& args) {
  const auto entries = io::catalog();
  if (!write_dir.empty()) {
    for (const auto& scenario : entries)
      write_file(fs::path(write_dir) / (scenario.name + ".cfg"), io::render_config(scenario));
    std::cout << "wrote " << entries.size() << " scenario configs to " << write_dir << "\n";
    return 0;
  }
  if (run_all) {
    int failures = 0;
    for (const auto& scenario : entries) {
      if (!scenario.outputs.count(io::OutputKind::Profiles)) continue;
      CommonArgs sub = args;
      CommonArgs loaded = sub;
      (void)loaded;
      const solver::RunResult result = solver::run(scenario.run_spec());
      const solver::WaveReport report = solver::extract_wave_structure(
          result.snapshots.back(), scenario.left, scenario.right, scenario.params);
      std::string seq;
      for (const auto& tk : io::tokens_of(report)) seq += tk + " ";
      std::cout << scenario.name << ": [" << seq << "]\n";
    }
    return failures == 0 ? 0 : kExitNumerical;
  }
  for (const auto& scenario : entries) std::cout << scenario.name << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solver laboratory for a density-constrained transport system"};
  app.require_subcommand(1);

  CommonArgs solve_args, regions_args, curves_args, delta_args, scan_args, case_args, cat_args;
  double horizon = 100.0;
  std::string catalog_write_dir;
  bool catalog_run = false;

  add_common(app.add_subcommand("solve", "run the LLF solver and emit profiles"), solve_args);
  add_common(app.add_subcommand("regions", "emit the region map for the left state"), regions_args);
  add_common(app.add_subcommand("curves", "emit sampled wave curves"), curves_args);
  add_common(app.add_subcommand("delta", "integrate the singular-shock trajectory"), delta_args);
  add_common(app.add_subcommand("scan", "scan the overcompressive region"), scan_args);
  auto* case_cmd = app.add_subcommand("case-id", "print the case index and transitions");
  add_common(case_cmd, case_args);
  case_cmd->add_option("--horizon", horizon, "horizon for transition times");
  auto* cat_cmd = app.add_subcommand("catalog", "list or materialize the scenario catalog");
  add_common(cat_cmd, cat_args, /*config_required=*/false);
  cat_cmd->add_option("--write", catalog_write_dir, "write all catalog configs to a directory");
  cat_cmd->add_flag("--run", catalog_run, "run every profile scenario and print sequences");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("solve")) return cmd_solve(solve_args);
    if (app.got_subcommand("regions")) return cmd_regions(regions_args);
    if (app.got_subcommand("curves")) return cmd_curves(curves_args);
    if (app.got_subcommand("delta")) return cmd_delta(delta_args);
    if (app.got_subcommand("scan")) return cmd_scan(scan_args);
    if (app.got_subcommand("case-id")) return cmd_case_id(case_args, horizon);
    if (app.got_subcommand("catalog")) return cmd_catalog(catalog_write_dir, catalog_run, cat_args);
  } catch (const ParseError& e) {
    std::cerr << "{\"error\": \"parse\", \"detail\": \"" << e.what() << "\"}\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "{\"error\": \"validation\", \"detail\": \"" << e.what() << "\"}\n";
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "{\"error\": \"numerical\", \"detail\": \"" << e.what() << "\"}\n";
    return kExitNumerical;
  }
  return 0;
}
