#pragma once

#include <vector>

#include "crowdflow/model.hpp"

namespace crowdflow::solver {

struct Grid {
  double x0 = 0.0;   ///< left edge of the first interior cell
  double dx = 1.0;   ///< cell width (kept at 1 in the standard runs)
  int n_cells = 0;   ///< interior cells; one ghost cell per side

  double center(int i) const { return x0 + (i + 0.5) * dx; }
};

struct Field {
  Grid grid;
  std::vector<Conserved> cons;  ///< interior cells only
  double t = 0.0;
  long step_count = 0;
};

enum class BoundaryMode { Outflow, Periodic };

struct StepOptions {
  double cfl = 0.45;          ///< must satisfy cfl <= 0.5
  double dt_max = 1.0;        ///< fallback when every wave speed vanishes
  double dt_cap = 0.0;        ///< if > 0, never step past this increment
  BoundaryMode boundary = BoundaryMode::Outflow;
  /// Cells at or below this density are treated as vacuum: zero flux,
  /// zero momentum, excluded from the wave-speed sweep. The default is the
  /// curve-algebra floor; vacuum-traversing scenarios with steep negative
  /// exponents raise it to keep the time step finite.
  double vacuum_clamp = kVacuumFloor;
  /// Negative exponents make the mobility (and the wave speeds) diverge as
  /// rho -> 0. Inside the solver the power (rho/rho_bar)^a is evaluated at
  /// max(rho, mobility_floor), which bounds the flux and the time step in
  /// vacuum-forming runs while leaving the rest of the field untouched.
  double mobility_floor = kVacuumFloor;
};

struct StepResult {
  double dt = 0.0;
  double lambda_max = 0.0;
};

/// One Lax-Friedrichs update H_i <- (H_{i-1}+H_{i+1})/2 - dt/(2 dx) *
/// (G_{i+1}-G_{i-1}) with dt = cfl * dx / lambda_max.
StepResult llf_step(Field& field, const SystemParams& params, const StepOptions& options);

/// Replace every maximal run of >= min_run cells whose per-component total
/// variation stays below tv_tol by the run's mean.
void renormalize_plateaus(Field& field, double tv_tol = 1e-7, int min_run = 5);

struct Snapshot {
  double t = 0.0;
  long step = 0;
  std::vector<double> x;
  std::vector<double> rho;
  std::vector<double> u_tilde;
  std::vector<double> u_phys;
};

Snapshot snapshot_of(const Field& field, const SystemParams& params);

/// A full solver run: parameters, Riemann data, grid and stepping policy.
struct RunSpec {
  SystemParams params;
  State left;
  State right;
  int n_cells = 0;       ///< 0: size the domain from the initial wave speeds
  double dx = 1.0;
  double t_end = 5.0;
  double cfl = 0.45;
  int blocks = 20;
  int block_steps = 1000;
  bool renormalize = true;
  int renorm_interval = 100;
  double vacuum_clamp = kVacuumFloor;
  double mobility_floor = kVacuumFloor;
  BoundaryMode boundary = BoundaryMode::Outflow;
};

/// Domain half-width covering the fastest initial wave speeds over t_end
/// with a 1.5 margin.
double auto_half_width(const RunSpec& spec);

Field initial_field(const RunSpec& spec);

struct RunResult {
  std::vector<Snapshot> snapshots;  ///< initial state plus one per block
  Field final_field;
  long total_steps = 0;
};

RunResult run(const RunSpec& spec);

enum class SegmentKind { Shock_a, Rarefaction_a, Contact_0, Contact_a, Vacuum, DeltaCandidate, Unknown };

const char* segment_kind_name(SegmentKind kind);

struct Segment {
  SegmentKind kind = SegmentKind::Unknown;
  double xi_lo = 0.0, xi_hi = 0.0;  ///< x/t extent (x at t = 0)
  State before;
  State after;
  double peak_rho = 0.0;
  /// Max inter-cell density difference over its mean across the segment;
  /// values beyond ~10 read as a jump. Recorded for reporting; the kind
  /// itself comes from the plateau eigenvalues.
  double sharpness = 0.0;
};

struct WaveReport {
  std::vector<Segment> segments;   ///< ordered by xi; includes Vacuum tokens
  std::vector<State> plateaus;     ///< detected constant states, ordered

  std::vector<SegmentKind> sequence() const;
};

struct ExtractOptions {
  double flat_frac = 5e-3;      ///< flatness tolerance vs problem scales
  int min_plateau_cells = 5;
  double contact_u_frac = 0.04; ///< u_tilde jump below this is an a-family wave
  double jump_factor = 10.0;    ///< sharpness diagnostic (recorded, not decisive)
  double lambda0_rel_tol = 0.05;
  double delta_factor = 5.0;    ///< spike height vs max(rho_L, rho_R, rho_bar)
  double vacuum_threshold = 0.0;  ///< 0: derived from the data scales
};

/// Read the wave sequence out of a profile: plateaus, the transitions
/// between them classified by the eigenvalues of the plateau states, vacuum
/// plateaus and delta spikes flagged from the density trace.
WaveReport extract_wave_structure(const Snapshot& snapshot, const State& left, const State& right,
                                  const SystemParams& params, const ExtractOptions& options = {});

struct RefineRow {
  int level = 0;
  int n_cells = 0;
  double t_end = 0.0;
  double max_rho = 0.0;
  double mid_plateau_rho = 0.0;  ///< NaN when no interior plateau exists
};

/// Rerun the scenario on successively doubled cell counts (fixed domain,
/// halved dx, fixed horizon); a density peak that keeps growing across
/// levels confirms a delta candidate, while bounded features converge.
std::vector<RefineRow> refine_study(const RunSpec& spec, int levels);

}  // namespace crowdflow::solver
