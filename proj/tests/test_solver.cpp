#include <doctest.h>

#include <cmath>
#include <numeric>

#include "crowdflow/classify.hpp"
#include "crowdflow/delta.hpp"
#include "crowdflow/solver.hpp"
#include "test_support.hpp"

using namespace crowdflow;
using namespace crowdflow::solver;
using testsupport::params_with;

namespace {

Field uniform_field(const State& s, int n, double dx = 1.0) {
  Field f;
  f.grid = {-0.5 * n * dx, dx, n};
  f.cons.assign(n, to_conserved(s));
  return f;
}

double total_rho(const Field& f) {
  double sum = 0.0;
  for (const auto& c : f.cons) sum += c.rho;
  return sum * f.grid.dx;
}

double total_m(const Field& f) {
  double sum = 0.0;
  for (const auto& c : f.cons) sum += c.m;
  return sum * f.grid.dx;
}

RunSpec case1_spec() {
  RunSpec spec;
  spec.params = params_with(-1.5, 5.0);
  spec.left = {3.0, -3.0};
  spec.right = {2.0, -5.0};
  spec.t_end = 5.0;
  spec.n_cells = 1000;
  return spec;
}

}  // namespace

TEST_CASE("llf_step: constant data is preserved bitwise") {
  const SystemParams p = params_with(-1.5, 5.0);
  Field f = uniform_field({3.0, -1.5}, 64);
  const std::vector<Conserved> before = f.cons;
  StepOptions opts;
  const StepResult r = llf_step(f, p, opts);
  CHECK(r.dt > 0.0);
  for (int i = 0; i < 64; ++i) {
    CHECK(f.cons[i].rho == before[i].rho);
    CHECK(f.cons[i].m == before[i].m);
  }

  // Nonzero source: the transformed system still sees constant data.
  const SystemParams forced = params_with(-1.5, 5.0, SourceTerm::constant(0.1));
  Field g = uniform_field({3.0, -1.5}, 64);
  for (int s = 0; s < 10; ++s) llf_step(g, forced, opts);
  for (int i = 0; i < 64; ++i) {
    CHECK(g.cons[i].rho == before[i].rho);
    CHECK(g.cons[i].m == before[i].m);
  }
  // The reported physical velocity drifts by I(t).
  const Snapshot snap = snapshot_of(g, forced);
  CHECK(snap.u_phys[10] == doctest::Approx(-1.5 + forced.integral(g.t)).epsilon(1e-12));
}

TEST_CASE("llf_step: zero wave speed falls back to dt_max") {
  const SystemParams p = params_with(-1.5, 5.0);
  Field f = uniform_field({3.0, 0.0}, 16);  // zero velocity everywhere
  StepOptions opts;
  opts.dt_max = 0.125;
  const StepResult r = llf_step(f, p, opts);
  CHECK(r.lambda_max == 0.0);
  CHECK(r.dt == 0.125);
}

TEST_CASE("llf_step: periodic conservation and CFL bound") {
  const SystemParams p = params_with(-1.5, 5.0);
  Field f = uniform_field({3.0, -3.0}, 128);
  // A smooth bump in both components.
  for (int i = 0; i < 128; ++i) {
    const double x = (i - 64.0) / 16.0;
    const State s{3.0 + std::exp(-x * x), -3.0 + 0.5 * std::exp(-x * x)};
    f.cons[i] = to_conserved(s);
  }
  StepOptions opts;
  opts.boundary = BoundaryMode::Periodic;
  const double rho0 = total_rho(f);
  const double m0 = total_m(f);
  double prev_rho = rho0, prev_m = m0;
  for (int s = 0; s < 10000; ++s) {
    const StepResult r = llf_step(f, p, opts);
    CHECK(r.dt * r.lambda_max / f.grid.dx <= 0.5 + 1e-15);
    if (s < 5) {
      // Per-step telescoping: interior sums move only by boundary flux.
      CHECK(std::abs(total_rho(f) - prev_rho) / std::abs(rho0) < 1e-12);
      CHECK(std::abs(total_m(f) - prev_m) / (std::abs(m0) + 1.0) < 1e-12);
      prev_rho = total_rho(f);
      prev_m = total_m(f);
    }
  }
  CHECK(std::abs(total_rho(f) - rho0) / std::abs(rho0) < 1e-10);
  CHECK(std::abs(total_m(f) - m0) / (std::abs(m0) + 1.0) < 1e-10);
}

TEST_CASE("renormalization flattens quiet plateaus") {
  const SystemParams p = params_with(-1.5, 5.0);
  Field f = uniform_field({3.0, -3.0}, 40);
  for (int i = 0; i < 20; ++i) f.cons[i].rho += 1e-9 * i;  // sub-threshold ripple
  f.cons[30].rho = 4.0;  // genuine feature
  renormalize_plateaus(f);
  for (int i = 1; i < 19; ++i) CHECK(f.cons[i].rho == f.cons[0].rho);
  CHECK(f.cons[30].rho == 4.0);
}

TEST_CASE("case 1 run: middle plateau matches the analytic construction") {
  const RunSpec spec = case1_spec();
  const RunResult result = run(spec);
  REQUIRE(result.snapshots.size() >= 2);
  const Snapshot& last = result.snapshots.back();
  CHECK(last.t == doctest::Approx(5.0).epsilon(1e-12));

  const auto mid = classify::classical_middle_state(spec.left, spec.right,
                                                    classify::MiddleOrder::AFirst, 0.0, spec.params);
  REQUIRE(mid.has_value());

  // Sample the plateau between the shock (s = -8.28) and the contact
  // (s = 14.76) well away from both waves.
  double rho_sum = 0.0, u_sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < last.x.size(); ++i) {
    const double xi = last.x[i] / last.t;
    if (xi > -4.0 && xi < 6.0) {
      rho_sum += last.rho[i];
      u_sum += last.u_tilde[i];
      ++count;
    }
  }
  REQUIRE(count > 10);
  CHECK(rho_sum / count == doctest::Approx(mid->rho).epsilon(0.02));
  CHECK(u_sum / count == doctest::Approx(mid->u_tilde).epsilon(0.02));
}

TEST_CASE("extract_wave_structure: constant data yields no segments") {
  const SystemParams p = params_with(-1.5, 5.0);
  Field f = uniform_field({3.0, -3.0}, 200);
  f.t = 2.0;
  const Snapshot snap = snapshot_of(f, p);
  const WaveReport report = extract_wave_structure(snap, {3.0, -3.0}, {3.0, -3.0}, p);
  CHECK(report.segments.empty());
}

TEST_CASE("extract_wave_structure: case 1 two-wave profile") {
  const RunSpec spec = case1_spec();
  const RunResult result = run(spec);
  const WaveReport report =
      extract_wave_structure(result.snapshots.back(), spec.left, spec.right, spec.params);
  REQUIRE(report.segments.size() == 2);
  CHECK(report.segments[0].kind == SegmentKind::Shock_a);
  CHECK(report.segments[1].kind == SegmentKind::Contact_0);
  // Density varies while velocity stays fixed across the first wave.
  CHECK(report.segments[0].before.u_tilde ==
        doctest::Approx(report.segments[0].after.u_tilde).epsilon(0.05));
}

TEST_CASE("refine_study: stable plateaus classically, growth for the delta") {
  RunSpec classical = case1_spec();
  classical.n_cells = 0;
  classical.t_end = 4.0;
  const auto rows = refine_study(classical, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].max_rho < 1.2 * rows[0].max_rho);  // bounded density

  RunSpec delta_spec;
  delta_spec.params = params_with(-1.5, 5.0);
  delta_spec.left = {3.0, 3.0};
  delta_spec.right = {9.0, -8.0};
  delta_spec.t_end = 150.0;
  delta_spec.dx = 0.5;
  delta_spec.block_steps = 100000;
  const auto delta_rows = refine_study(delta_spec, 2);
  CHECK(delta_rows[1].max_rho >= 1.5 * delta_rows[0].max_rho);

  CHECK_THROWS_AS(refine_study(classical, 1), ValidationError);
}

TEST_CASE("delta run: spike position tracks the trajectory integrator") {
  RunSpec spec;
  spec.params = params_with(-1.5, 5.0);
  spec.left = {3.0, 3.0};
  spec.right = {9.0, -8.0};
  spec.t_end = 60.0;
  spec.dx = 0.125;
  spec.block_steps = 100000;
  const RunResult result = run(spec);
  const Snapshot& last = result.snapshots.back();

  double peak_rho = 0.0;
  double peak_x = 0.0;
  for (std::size_t i = 0; i < last.x.size(); ++i) {
    if (last.rho[i] > peak_rho) {
      peak_rho = last.rho[i];
      peak_x = last.x[i];
    }
  }
  CHECK(peak_rho > 5.0 * 9.0);  // delta-candidate threshold

  const auto traj = delta::integrate_delta_neg(spec.left, spec.right, spec.params, spec.t_end, 1e-3);
  const double x_pred = traj.x.back();
  CHECK(std::abs(peak_x - x_pred) / std::abs(x_pred) < 0.05);

  const WaveReport report = extract_wave_structure(last, spec.left, spec.right, spec.params);
  bool has_delta = false;
  for (const auto& seg : report.segments) has_delta |= seg.kind == SegmentKind::DeltaCandidate;
  CHECK(has_delta);
}
