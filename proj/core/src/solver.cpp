#include "crowdflow/solver.hpp"

#include "crowdflow/waves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crowdflow::solver {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Conserved ghost(const Field& field, int i, BoundaryMode boundary) {
  const int n = field.grid.n_cells;
  if (i >= 0 && i < n) return field.cons[i];
  if (boundary == BoundaryMode::Periodic) return field.cons[(i + n) % n];
  return field.cons[i < 0 ? 0 : n - 1];  // outflow: zero-gradient copy
}
}  // namespace

StepResult llf_step(Field& field, const SystemParams& params, const StepOptions& options) {
  const int n = field.grid.n_cells;
  const double dx = field.grid.dx;
  const double I = params.integral(field.t);
  const double mob_floor = std::max(options.mobility_floor, kVacuumFloor);
  const auto q_of = [&](double rho) { return power_ratio(std::max(rho, mob_floor), params); };

  double lambda_max = 0.0;
  for (const Conserved& c : field.cons) {
    if (c.rho <= options.vacuum_clamp) continue;  // vacuum cells carry no flux
    const State s = to_state(c);
    const double u = s.u_tilde + I;
    const double q = q_of(s.rho);
    const double la = std::abs(u * (1.0 - (params.a_exp + 1.0) * q));
    const double l0 = std::abs(u * (1.0 - q));
    lambda_max = std::max({lambda_max, la, l0});
  }

  double dt;
  if (lambda_max > 0.0 && std::isfinite(lambda_max)) {
    dt = options.cfl * dx / lambda_max;
  } else {
    dt = options.dt_max;  // ZeroWaveSpeed fallback: nothing moves
  }
  if (options.dt_cap > 0.0) dt = std::min(dt, options.dt_cap);

  // Fluxes including one ghost on each side.
  std::vector<double> g1(n + 2, 0.0), g2(n + 2, 0.0);
  for (int i = -1; i <= n; ++i) {
    const Conserved c = ghost(field, i, options.boundary);
    if (c.rho <= options.vacuum_clamp) continue;
    const State s = to_state(c);
    const double f1 = s.rho * (s.u_tilde + I) * (1.0 - q_of(s.rho));
    g1[i + 1] = f1;
    g2[i + 1] = s.u_tilde * f1;
  }

  std::vector<Conserved> next(n);
  const double lam = dt / (2.0 * dx);
  for (int i = 0; i < n; ++i) {
    const Conserved cl = ghost(field, i - 1, options.boundary);
    const Conserved cr = ghost(field, i + 1, options.boundary);
    double rho = 0.5 * (cl.rho + cr.rho) - lam * (g1[i + 2] - g1[i]);
    double m = 0.5 * (cl.m + cr.m) - lam * (g2[i + 2] - g2[i]);
    if (!(rho > options.vacuum_clamp)) {
      rho = kVacuumFloor;
      m = 0.0;
    }
    next[i] = {rho, m};
  }
  field.cons = std::move(next);
  field.t += dt;
  ++field.step_count;
  return {dt, lambda_max};
}

void renormalize_plateaus(Field& field, double tv_tol, int min_run) {
  const int n = field.grid.n_cells;
  int i = 0;
  while (i < n) {
    int j = i;
    double tv_rho = 0.0, tv_m = 0.0;
    while (j + 1 < n) {
      const double dr = std::abs(field.cons[j + 1].rho - field.cons[j].rho);
      const double dm = std::abs(field.cons[j + 1].m - field.cons[j].m);
      if (tv_rho + dr >= tv_tol || tv_m + dm >= tv_tol) break;
      tv_rho += dr;
      tv_m += dm;
      ++j;
    }
    const int len = j - i + 1;
    if (len >= min_run) {
      double mean_rho = 0.0, mean_m = 0.0;
      for (int k = i; k <= j; ++k) {
        mean_rho += field.cons[k].rho;
        mean_m += field.cons[k].m;
      }
      mean_rho /= len;
      mean_m /= len;
      for (int k = i; k <= j; ++k) field.cons[k] = {mean_rho, mean_m};
    }
    i = j + 1;
  }
}

Snapshot snapshot_of(const Field& field, const SystemParams& params) {
  Snapshot snap;
  snap.t = field.t;
  snap.step = field.step_count;
  const double I = params.integral(field.t);
  const int n = field.grid.n_cells;
  snap.x.resize(n);
  snap.rho.resize(n);
  snap.u_tilde.resize(n);
  snap.u_phys.resize(n);
  for (int i = 0; i < n; ++i) {
    const State s = to_state(field.cons[i]);
    snap.x[i] = field.grid.center(i);
    snap.rho[i] = s.rho;
    snap.u_tilde[i] = s.u_tilde;
    snap.u_phys[i] = s.u_tilde + I;
  }
  return snap;
}

double auto_half_width(const RunSpec& spec) {
  double speed = 1.0;
  for (const State& s : {spec.left, spec.right}) {
    const Eigenpair e = eigenvalues(s, 0.0, spec.params);
    if (std::isfinite(e.lambda_a)) speed = std::max(speed, std::abs(e.lambda_a));
    if (std::isfinite(e.lambda_0)) speed = std::max(speed, std::abs(e.lambda_0));
  }
  // Allow for the moving-asymptote drift of the physical velocity.
  speed += std::abs(spec.params.integral(spec.t_end));
  return 1.5 * speed * std::max(spec.t_end, 1.0) + 10.0 * spec.dx;
}

Field initial_field(const RunSpec& spec) {
  Field field;
  field.grid.dx = spec.dx;
  if (spec.n_cells > 0) {
    field.grid.n_cells = spec.n_cells;
    field.grid.x0 = -0.5 * spec.n_cells * spec.dx;
  } else {
    const double half = auto_half_width(spec);
    field.grid.n_cells = std::max(100, 2 * static_cast<int>(std::ceil(half / spec.dx)));
    field.grid.x0 = -0.5 * field.grid.n_cells * spec.dx;
  }
  field.cons.resize(field.grid.n_cells);
  for (int i = 0; i < field.grid.n_cells; ++i) {
    const double x = field.grid.center(i);
    field.cons[i] = to_conserved(x < 0.0 ? spec.left : spec.right);
  }
  return field;
}

RunResult run(const RunSpec& spec) {
  RunResult result;
  Field field = initial_field(spec);
  StepOptions options;
  options.cfl = spec.cfl;
  options.boundary = spec.boundary;
  options.vacuum_clamp = std::max(spec.vacuum_clamp, kVacuumFloor);
  options.mobility_floor = std::max(spec.mobility_floor, kVacuumFloor);
  result.snapshots.push_back(snapshot_of(field, spec.params));

  for (int block = 0; block < spec.blocks && field.t < spec.t_end; ++block) {
    for (int s = 0; s < spec.block_steps && field.t < spec.t_end; ++s) {
      options.dt_cap = spec.t_end - field.t;
      llf_step(field, spec.params, options);
      if (spec.renormalize && field.step_count % spec.renorm_interval == 0)
        renormalize_plateaus(field);
    }
    result.snapshots.push_back(snapshot_of(field, spec.params));
  }
  result.total_steps = field.step_count;
  result.final_field = std::move(field);
  return result;
}

const char* segment_kind_name(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::Shock_a: return "Shock_a";
    case SegmentKind::Rarefaction_a: return "Rarefaction_a";
    case SegmentKind::Contact_0: return "Contact_0";
    case SegmentKind::Contact_a: return "Contact_a";
    case SegmentKind::Vacuum: return "Vacuum";
    case SegmentKind::DeltaCandidate: return "DeltaCandidate";
    case SegmentKind::Unknown: return "Unknown";
  }
  return "?";
}

std::vector<SegmentKind> WaveReport::sequence() const {
  std::vector<SegmentKind> seq;
  seq.reserve(segments.size());
  for (const auto& s : segments) seq.push_back(s.kind);
  return seq;
}

namespace {

struct Plateau {
  int begin = 0, end = 0;  // [begin, end)
  double rho = 0.0, u = 0.0;
  bool vacuum = false;
};

double lambda_a_of(const State& s, double t, const SystemParams& params) {
  return eigenvalues(s, t, params).lambda_a;
}

double lambda_0_of(const State& s, double t, const SystemParams& params) {
  return eigenvalues(s, t, params).lambda_0;
}

}  // namespace

WaveReport extract_wave_structure(const Snapshot& snapshot, const State& left, const State& right,
                                  const SystemParams& params, const ExtractOptions& options) {
  WaveReport report;
  const int n = static_cast<int>(snapshot.rho.size());
  if (n < 3) return report;
  const double t = snapshot.t;
  const auto xi = [&](int i) { return t > 0.0 ? snapshot.x[i] / t : snapshot.x[i]; };

  const double s_rho = std::max({left.rho, right.rho, params.rho_bar});
  const double s_u = std::max({std::abs(left.u_tilde), std::abs(right.u_tilde), 1.0});
  // "Drops to zero" at finite resolution: well below every bounding scale.
  const double vac_thresh = options.vacuum_threshold > 0.0
                                ? options.vacuum_threshold
                                : std::max(10.0 * kVacuumFloor,
                                           0.3 * std::min({left.rho, right.rho, params.rho_bar}));
  const double band_rho = 4.0 * options.flat_frac * s_rho;
  const double band_u = 4.0 * options.flat_frac * s_u;
  const int min_len = std::max(options.min_plateau_cells, n / 120);

  // Delta spike: overrides everything in its neighborhood.
  int spike_center = -1;
  double peak_rho = 0.0;
  for (int i = 0; i < n; ++i) {
    if (snapshot.rho[i] > peak_rho) {
      peak_rho = snapshot.rho[i];
      spike_center = i;
    }
  }
  const bool has_spike = peak_rho > options.delta_factor * s_rho;

  // Plateau candidates: maximal runs that stay inside a fixed band around
  // their running mean. Vacuum cells count as uniform regardless of the
  // (meaningless) velocity noise they carry.
  std::vector<Plateau> plateaus;
  int i = 0;
  while (i < n) {
    if (has_spike && std::abs(i - spike_center) <= 3) {
      ++i;
      continue;
    }
    const bool run_vacuum = snapshot.rho[i] < vac_thresh;
    int j = i;
    double sum_r = snapshot.rho[i];
    double sum_u = snapshot.u_tilde[i];
    while (j + 1 < n) {
      if (has_spike && std::abs(j + 1 - spike_center) <= 3) break;
      const double r_next = snapshot.rho[j + 1];
      const double u_next = snapshot.u_tilde[j + 1];
      const int len = j - i + 1;
      if (run_vacuum) {
        if (r_next >= vac_thresh) break;
      } else {
        if (r_next < vac_thresh) break;
        if (std::abs(r_next - sum_r / len) > band_rho) break;
        if (std::abs(u_next - sum_u / len) > band_u) break;
      }
      ++j;
      sum_r += r_next;
      sum_u += u_next;
    }
    const int len = j - i + 1;
    if (len >= min_len) {
      Plateau p;
      p.begin = i;
      p.end = j + 1;
      p.rho = sum_r / len;
      p.vacuum = run_vacuum;
      p.u = run_vacuum ? 0.0 : sum_u / len;
      plateaus.push_back(p);
    }
    i = j + 1;
  }
  // Coalesce adjacent plateau candidates whose states are effectively the
  // same: the band walk splits long plateaus at wave feet where the running
  // mean drifts, and those splits are not waves. Shoulders hovering just
  // above the vacuum threshold belong to the vacuum region.
  {
    std::vector<Plateau> merged_plateaus;
    for (const Plateau& p : plateaus) {
      if (!merged_plateaus.empty()) {
        Plateau& prev = merged_plateaus.back();
        const bool same_vac = (prev.vacuum || prev.rho < 2.0 * vac_thresh) &&
                              (p.vacuum || p.rho < 2.0 * vac_thresh) &&
                              (prev.vacuum || p.vacuum);
        const bool same_state = !prev.vacuum && !p.vacuum &&
                                std::abs(prev.rho - p.rho) <= 5.0 * band_rho &&
                                std::abs(prev.u - p.u) <= 5.0 * band_u;
        if (same_vac || same_state) {
          const int len_prev = prev.end - prev.begin;
          const int len_p = p.end - p.begin;
          prev.rho = (prev.rho * len_prev + p.rho * len_p) / (len_prev + len_p);
          prev.u = (prev.u * len_prev + p.u * len_p) / (len_prev + len_p);
          prev.end = p.end;
          prev.vacuum = prev.vacuum || p.vacuum;
          continue;
        }
      }
      merged_plateaus.push_back(p);
    }
    plateaus = std::move(merged_plateaus);
  }
  if (plateaus.size() < 2) return report;

  // Recompute plateau values as trimmed central means; the band-walk sums
  // include wave feet that bias the state (and the lambda_0 test) off.
  for (Plateau& p : plateaus) {
    const int len = p.end - p.begin;
    const int cut = len / 5;
    const int lo = p.begin + cut;
    const int hi = p.end - cut;
    double sum_r = 0.0, sum_u = 0.0;
    int count = 0;
    for (int k = lo; k < hi; ++k) {
      sum_r += snapshot.rho[k];
      sum_u += snapshot.u_tilde[k];
      ++count;
    }
    if (count > 0) {
      p.rho = sum_r / count;
      if (!p.vacuum) p.u = sum_u / count;
    }
  }

  const auto classify_transition = [&](const Plateau& a, const Plateau& b) -> SegmentKind {
    if (a.vacuum || b.vacuum) {
      if (a.vacuum && b.vacuum) return SegmentKind::Unknown;
      // A wave into or out of vacuum departs from its solid plateau at the
      // corresponding characteristic speed; match the observed position
      // against the two families of the solid state.
      const Plateau& solid = a.vacuum ? b : a;
      const int near_cell = a.vacuum ? b.begin : a.end - 1;
      const double xi_near = xi(near_cell);
      const Eigenpair e = eigenvalues({solid.rho, solid.u}, t, params);
      if (!std::isfinite(e.lambda_a) || !std::isfinite(e.lambda_0))
        return SegmentKind::Contact_0;
      if (std::abs(xi_near - e.lambda_a) < std::abs(xi_near - e.lambda_0)) {
        return params.a_exp == -1.0 ? SegmentKind::Contact_a : SegmentKind::Rarefaction_a;
      }
      return SegmentKind::Contact_0;
    }
    const State sa{a.rho, a.u};
    const State sb{b.rho, b.u};
    const double du = std::abs(b.u - a.u);
    if (du <= options.contact_u_frac * s_u) {
      if (params.a_exp == -1.0) return SegmentKind::Contact_a;
      const double la = lambda_a_of(sa, t, params);
      const double lb = lambda_a_of(sb, t, params);
      return la < lb ? SegmentKind::Rarefaction_a : SegmentKind::Shock_a;
    }
    // Vertical 0-contact: density pinned at the critical value on both
    // sides while the velocity jumps.
    if (std::abs(a.rho - params.rho_bar) < 0.05 * params.rho_bar &&
        std::abs(b.rho - params.rho_bar) < 0.05 * params.rho_bar)
      return SegmentKind::Contact_0;
    const double l0a = lambda_0_of(sa, t, params);
    const double l0b = lambda_0_of(sb, t, params);
    if (std::isfinite(l0a) && std::isfinite(l0b) &&
        std::abs(l0a - l0b) <= options.lambda0_rel_tol * std::max({std::abs(l0a), std::abs(l0b), 1.0}))
      return SegmentKind::Contact_0;
    return SegmentKind::Unknown;
  };

  // Fraction of the cells in [from, to] that satisfy the self-similar fan
  // relation lambda_a(state) = x/t; distinguishes genuine rarefaction
  // flanks from mere numerical smear.
  const auto fan_fraction = [&](int from, int to) {
    if (t <= 0.0 || to - from < 4) return 0.0;
    int good = 0, total = 0;
    for (int k = from; k <= to; ++k) {
      const State s{snapshot.rho[k], snapshot.u_tilde[k]};
      const double lam = eigenvalues(s, t, params).lambda_a;
      if (!std::isfinite(lam)) continue;
      ++total;
      if (std::abs(lam - xi(k)) <= 0.1 * (std::abs(xi(k)) + 0.5)) ++good;
    }
    return total > 0 ? double(good) / total : 0.0;
  };

  struct RawSegment {
    Segment seg;
    std::size_t before_idx, after_idx;
  };
  std::vector<RawSegment> raw;
  for (std::size_t k = 0; k + 1 < plateaus.size(); ++k) {
    const Plateau& a = plateaus[k];
    const Plateau& b = plateaus[k + 1];
    RawSegment rs;
    rs.before_idx = k;
    rs.after_idx = k + 1;
    Segment& seg = rs.seg;
    seg.xi_lo = xi(a.end - 1);
    seg.xi_hi = xi(b.begin);
    seg.before = {a.rho, a.u};
    seg.after = {b.rho, b.u};
    seg.peak_rho = 0.0;
    double max_step = 0.0, sum_step = 0.0;
    int steps = 0;
    for (int c = a.end - 1; c <= b.begin; ++c) {
      seg.peak_rho = std::max(seg.peak_rho, snapshot.rho[c]);
      if (c > a.end - 1) {
        const double d = std::abs(snapshot.rho[c] - snapshot.rho[c - 1]);
        max_step = std::max(max_step, d);
        sum_step += d;
        ++steps;
      }
    }
    if (steps > 0 && sum_step > 0.0) seg.sharpness = max_step / (sum_step / steps);
    if (has_spike && spike_center >= a.end - 1 && spike_center <= b.begin) {
      seg.kind = SegmentKind::DeltaCandidate;
      seg.peak_rho = peak_rho;
    } else {
      seg.kind = classify_transition(a, b);
    }
    raw.push_back(rs);
  }

  // A shallow rarefaction running into vacuum drags a quasi-flat shelf
  // behind it; the shelf-to-vacuum piece is the fan's continuation, not a
  // separate 0-contact.
  for (std::size_t k = 1; k < raw.size(); ++k) {
    if (raw[k].seg.kind == SegmentKind::Contact_0 &&
        raw[k - 1].seg.kind == SegmentKind::Rarefaction_a &&
        plateaus[raw[k].after_idx].vacuum && !plateaus[raw[k].before_idx].vacuum) {
      raw[k].seg.kind = SegmentKind::Rarefaction_a;
    }
  }

  // Merge adjacent segments of the same kind: a wide fan or a smeared
  // contact chopped into band-sized steps is one wave.
  std::vector<RawSegment> merged;
  for (const RawSegment& rs : raw) {
    if (!merged.empty() && merged.back().seg.kind == rs.seg.kind &&
        rs.seg.kind != SegmentKind::DeltaCandidate &&
        !plateaus[rs.before_idx].vacuum) {
      merged.back().seg.xi_hi = rs.seg.xi_hi;
      merged.back().seg.after = rs.seg.after;
      merged.back().seg.peak_rho = std::max(merged.back().seg.peak_rho, rs.seg.peak_rho);
      merged.back().after_idx = rs.after_idx;
      continue;
    }
    merged.push_back(rs);
  }

  std::vector<bool> plateau_used(plateaus.size(), false);
  for (const RawSegment& rs : merged) {
    plateau_used[rs.before_idx] = plateau_used[rs.after_idx] = true;
  }

  for (std::size_t m = 0; m < merged.size(); ++m) {
    const RawSegment& rs = merged[m];
    if (rs.seg.kind == SegmentKind::DeltaCandidate) {
      // An a-rarefaction can run attached into the spike; detect it from
      // the self-similar profile on the left flank.
      const Plateau& a = plateaus[rs.before_idx];
      const int flank_end = spike_center - 5;
      const bool already_fan =
          !report.segments.empty() && report.segments.back().kind == SegmentKind::Rarefaction_a;
      if (!already_fan && params.a_exp != -1.0 && flank_end - a.end > std::max(min_len, 8) &&
          fan_fraction(a.end, flank_end) > 0.6) {
        Segment fan;
        fan.kind = SegmentKind::Rarefaction_a;
        fan.xi_lo = xi(a.end - 1);
        fan.xi_hi = xi(flank_end);
        fan.before = {a.rho, a.u};
        fan.after = {snapshot.rho[flank_end], snapshot.u_tilde[flank_end]};
        fan.peak_rho = snapshot.rho[flank_end];
        report.segments.push_back(fan);
      }
      Segment spike = rs.seg;
      spike.xi_lo = spike.xi_hi = xi(spike_center);
      report.segments.push_back(spike);
    } else if (plateaus[rs.before_idx].vacuum && rs.seg.kind == SegmentKind::Contact_0 &&
               rs.seg.after.rho > params.rho_bar) {
      // Vacuum exit crossing the critical density: the profile leaves the
      // vacuum through an a-family wave attached to the final 0-contact
      // (they move together); report both, split at the rho_bar crossing.
      const Plateau& a = plateaus[rs.before_idx];
      const Plateau& b = plateaus[rs.after_idx];
      int crossing = a.end - 1;
      for (int c = a.end - 1; c <= b.begin; ++c) {
        if (snapshot.rho[c] >= params.rho_bar) {
          crossing = c;
          break;
        }
      }
      Segment a_part = rs.seg;
      a_part.kind = params.a_exp < -1.0 ? SegmentKind::Rarefaction_a
                    : params.a_exp == -1.0 ? SegmentKind::Contact_a
                                           : SegmentKind::Shock_a;
      a_part.xi_hi = xi(crossing);
      a_part.after = {snapshot.rho[crossing], snapshot.u_tilde[crossing]};
      Segment c_part = rs.seg;
      c_part.xi_lo = xi(crossing);
      c_part.before = a_part.after;
      report.segments.push_back(a_part);
      report.segments.push_back(c_part);
    } else {
      report.segments.push_back(rs.seg);
    }
    if (plateaus[rs.after_idx].vacuum) {
      const Plateau& b = plateaus[rs.after_idx];
      Segment vac;
      vac.kind = SegmentKind::Vacuum;
      vac.xi_lo = xi(b.begin);
      vac.xi_hi = xi(b.end - 1);
      vac.before = vac.after = {b.rho, b.u};
      vac.peak_rho = b.rho;
      report.segments.push_back(vac);
    }
  }

  for (std::size_t k = 0; k < plateaus.size(); ++k) {
    if (plateau_used[k]) report.plateaus.push_back({plateaus[k].rho, plateaus[k].u});
  }
  return report;
}

std::vector<RefineRow> refine_study(const RunSpec& spec, int levels) {
  if (levels < 2) throw ValidationError("refine_study: levels must be >= 2");
  std::vector<RefineRow> rows;
  RunSpec base = spec;
  if (base.n_cells <= 0) base.n_cells = initial_field(base).grid.n_cells;
  for (int level = 0; level < levels; ++level) {
    // Fixed domain and horizon; each level halves the cell width, so a
    // genuine delta concentration keeps growing while bounded features
    // converge.
    RunSpec current = base;
    current.n_cells = base.n_cells << level;
    current.dx = base.dx / (1 << level);
    current.block_steps = base.block_steps << level;
    const RunResult result = run(current);
    const Snapshot& last = result.snapshots.back();
    RefineRow row;
    row.level = level;
    row.n_cells = current.n_cells;
    row.t_end = current.t_end;
    row.max_rho = *std::max_element(last.rho.begin(), last.rho.end());
    const WaveReport report =
        extract_wave_structure(last, current.left, current.right, current.params);
    row.mid_plateau_rho = kNaN;
    if (report.plateaus.size() > 2) {
      row.mid_plateau_rho = report.plateaus[1].rho;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace crowdflow::solver
