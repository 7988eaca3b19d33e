#include <doctest.h>

#include <cmath>

#include "crowdflow/delta.hpp"
#include "test_support.hpp"

using namespace crowdflow;
using namespace crowdflow::delta;
using testsupport::params_with;
using testsupport::pow_ratio;
using testsupport::Rng;

namespace {

// Oracle: assemble the initial-speed quadratic by direct bracket evaluation
// with std::pow, then locate its roots by bisection.
struct Quadratic {
  double A, B, C;
  double operator()(double s) const { return (A * s + B) * s + C; }
};

Quadratic oracle_quadratic(const State& l, const State& r, const SystemParams& p) {
  const double mob_l = 1.0 - pow_ratio(l.rho, p);
  const double mob_r = 1.0 - pow_ratio(r.rho, p);
  const double d_rho = l.rho - r.rho;
  const double d_m = l.rho * l.u_tilde - r.rho * r.u_tilde;
  const double d_m_mob = l.rho * l.u_tilde * mob_l - r.rho * r.u_tilde * mob_r;
  const double d_e_mob =
      l.rho * l.u_tilde * l.u_tilde * mob_l - r.rho * r.u_tilde * r.u_tilde * mob_r;
  return {d_rho, -(d_m + d_m_mob), d_e_mob};
}

double bisect_root(const Quadratic& q, double lo, double hi) {
  double flo = q(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = q(mid);
    if ((fm <= 0.0) == (flo <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

const SystemParams kCase4 = params_with(-1.5, 5.0);
const State kLeft4{3.0, 3.0};
const State kRight4{9.0, -8.0};

}  // namespace

TEST_CASE("initial speed roots: worked quadratic and bisection cross-check") {
  const Quadratic q = oracle_quadratic(kLeft4, kRight4, kCase4);
  // Normalized by -1: 6 s^2 + 112.8208 s + 368.581 = 0.
  CHECK(-q.A == doctest::Approx(6.0));
  CHECK(-q.B == doctest::Approx(112.8208).epsilon(1e-5));
  CHECK(-q.C == doctest::Approx(368.581).epsilon(1e-4));

  const SpeedRoots roots = initial_speed_roots(kLeft4, kRight4, kCase4);
  REQUIRE(roots.kind == SpeedRoots::Kind::Two);
  CHECK(roots.s1 == doctest::Approx(-4.2092).epsilon(1e-4));
  CHECK(roots.s2 == doctest::Approx(-14.594).epsilon(1e-4));
  CHECK(roots.s1 == doctest::Approx(bisect_root(q, -10.0, 0.0)).epsilon(1e-10));
  CHECK(roots.s2 == doctest::Approx(bisect_root(q, -20.0, -10.0)).epsilon(1e-10));

  CHECK(initial_speed_roots(kLeft4, kLeft4, kCase4).kind == SpeedRoots::Kind::NoJump);

  // [rho] = 0 with [rho u] != 0 degenerates to a single linear root.
  const SpeedRoots linear = initial_speed_roots({3.0, 3.0}, {3.0, -2.0}, kCase4);
  CHECK(linear.kind == SpeedRoots::Kind::Linear);
  const Quadratic lq = oracle_quadratic({3.0, 3.0}, {3.0, -2.0}, kCase4);
  CHECK(lq.A == 0.0);
  CHECK(linear.s1 == doctest::Approx(-lq.C / lq.B).epsilon(1e-12));
}

TEST_CASE("overcompressivity: worked bounds") {
  CHECK(overcompressive_at(kLeft4, kRight4, -4.2092, 0.0, kCase4));
  CHECK_FALSE(overcompressive_at(kLeft4, kRight4, -14.594, 0.0, kCase4));
  CHECK_FALSE(overcompressive_at(kLeft4, kLeft4, 0.0, 0.0, kCase4));

  const Eigenpair el = eigenvalues(kLeft4, 0.0, kCase4);
  const Eigenpair er = eigenvalues(kRight4, 0.0, kCase4);
  CHECK(std::max(er.lambda_a, er.lambda_0) == doctest::Approx(-4.6873).epsilon(1e-4));
  CHECK(std::min(el.lambda_a, el.lambda_0) == doctest::Approx(-3.4550).epsilon(1e-4));

  const RootChoice choice = select_admissible_root(kLeft4, kRight4, kCase4);
  REQUIRE(choice.status == RootChoice::Status::Unique);
  CHECK(choice.s == doctest::Approx(-4.2092).epsilon(1e-4));
}

TEST_CASE("root selection never finds two admissible roots") {
  Rng rng(307);
  int unique = 0;
  for (int i = 0; i < 10000; ++i) {
    const SystemParams p = params_with(rng.uniform(-2.5, -0.1), 5.0);
    const State l{rng.uniform(0.3, 12.0), rng.uniform(-8.0, 8.0)};
    const State r{rng.uniform(0.3, 12.0), rng.uniform(-8.0, 8.0)};
    const RootChoice choice = select_admissible_root(l, r, p);
    CHECK(choice.status != RootChoice::Status::Ambiguous);
    if (choice.status == RootChoice::Status::Unique) ++unique;
  }
  CHECK(unique > 100);  // the sample hits the overcompressive region often
}

TEST_CASE("negative-regime integrator: zero-source closed form is exact") {
  // With a(t) = 0 the brackets are constant: zeta = -kappa1 t, eta = s_minus,
  // x = s_minus t.
  const DeltaTrajectory traj = integrate_delta_neg(kLeft4, kRight4, kCase4, 10.0, 1e-3);
  REQUIRE(traj.size() == 10001);
  const double s = traj.s_minus;
  CHECK(s == doctest::Approx(-4.2092).epsilon(1e-4));

  const Jumps j = make_jumps(kLeft4, kRight4, kCase4);
  const double zeta_rate = -(s * j.d_rho - j.f1(0.0));
  CHECK(zeta_rate == doctest::Approx(6.5657).epsilon(1e-4));  // zeta'(0+) > 0

  for (std::size_t i : {std::size_t{1}, traj.size() / 2, traj.size() - 1}) {
    const double t = traj.times[i];
    CHECK(traj.x[i] == doctest::Approx(s * t).epsilon(1e-10));
    CHECK(traj.zeta[i] == doctest::Approx(zeta_rate * t).epsilon(1e-10));
    CHECK(traj.eta[i] == doctest::Approx(s).epsilon(1e-10));
    CHECK(traj.zeta[i] >= 0.0);
  }

  const DeltaTrajectory single = integrate_delta_neg(kLeft4, kRight4, kCase4, 0.0, 1e-3);
  CHECK(single.size() == 1);
  CHECK(single.x[0] == 0.0);
  CHECK(single.zeta[0] == 0.0);
  CHECK(single.eta[0] == doctest::Approx(s));
}

TEST_CASE("negative-regime integrator satisfies the strength/momentum ODEs") {
  // Nonzero source: residuals of zeta' = -kappa1 and (zeta eta)' = -kappa2
  // via central differences on the stored trajectory.
  const SystemParams p = params_with(-1.5, 5.0, SourceTerm::constant(0.1));
  const double dt = 1e-3;
  const DeltaTrajectory traj = integrate_delta_neg(kLeft4, kRight4, p, 3.0, dt);
  const Jumps j = make_jumps(kLeft4, kRight4, p);
  for (std::size_t i = 8; i + 8 < traj.size(); i += 37) {
    const double I = p.integral(traj.times[i]);
    // All derivatives, including the x' inside kappa, come from central
    // differences of the stored trajectory.
    const double xp = (traj.x[i + 1] - traj.x[i - 1]) / (2 * dt);
    const double zeta_dot = (traj.zeta[i + 1] - traj.zeta[i - 1]) / (2 * dt);
    const double w_dot =
        (traj.zeta[i + 1] * traj.eta[i + 1] - traj.zeta[i - 1] * traj.eta[i - 1]) / (2 * dt);
    const double kappa1 = xp * j.d_rho - j.f1(I);
    const double kappa2 = xp * j.d_m - j.f2(I);
    CHECK(std::abs(zeta_dot + kappa1) < 1e-6);
    CHECK(std::abs(w_dot + kappa2) < 1e-6);
    CHECK(traj.zeta[i] >= 0.0);
  }
}

TEST_CASE("negative-regime integrator rejects inadmissible data") {
  // Case 1 left state with the (9,-9) right state requires the rarefaction
  // prefix; the direct construction has no overcompressive root.
  CHECK_THROWS_AS(integrate_delta_neg({3.0, -3.0}, {9.0, -9.0}, kCase4, 1.0, 1e-3), Inadmissible);
  CHECK_THROWS_AS(integrate_delta_neg(kLeft4, kLeft4, kCase4, 1.0, 1e-3), NoJump);
  CHECK_THROWS_AS(integrate_delta_neg(kLeft4, kRight4, params_with(0.5, 5.0), 1.0, 1e-3),
                  Inadmissible);
}

TEST_CASE("positive-regime integrator: zero-source closed form and RH structure") {
  const SystemParams p = params_with(0.5, 5.0);
  const State l{3.0, -3.0};
  const State r{9.0, 9.0};  // the captioned delta panel for this regime
  const Jumps j = make_jumps(l, r, p);
  REQUIRE(j.d_m != 0.0);
  const double x_rate = j.f2(0.0) / j.d_m;
  const double zeta_rate = j.f1(0.0) - j.d_rho * j.f2(0.0) / j.d_m;

  const DeltaTrajectory traj = integrate_delta_pos(l, r, p, 10.0, 1e-3);
  for (std::size_t i : {traj.size() / 2, traj.size() - 1}) {
    const double t = traj.times[i];
    CHECK(traj.x[i] == doctest::Approx(x_rate * t).epsilon(1e-10));
    CHECK(traj.zeta[i] == doctest::Approx(zeta_rate * t).epsilon(1e-10));
    CHECK(traj.eta[i] == 0.0);  // -I(t) with a zero source
  }

  // The speed satisfies RH in the momentum component only.
  CHECK(x_rate * j.d_m - j.f2(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(x_rate * j.d_rho - j.f1(0.0)) > 1e-3);

  CHECK(integrate_delta_pos(l, r, p, 0.0, 1e-3).size() == 1);

  // Internal layer velocity scale is finite once zeta > 0.
  CHECK(std::isfinite(shadow_internal_speed_pos(x_rate, 1.0, p)));
  CHECK(shadow_internal_speed_pos(x_rate, 1.0, p) ==
        doctest::Approx(-x_rate * std::pow(p.rho_bar / 0.5, p.a_exp)).epsilon(1e-12));
  const auto exps = layer_exponents_pos(p);
  CHECK(exps[2] == -0.5);

  CHECK_THROWS_AS(integrate_delta_pos({3.0, 3.0}, {4.5, 2.0}, p, 1.0, 1e-3), MomentumJumpZero);
}

TEST_CASE("positive-regime integrator: internal velocity tracks -I(t)") {
  const SystemParams p = params_with(0.5, 5.0, SourceTerm::constant(0.1));
  const State l{3.0, -3.0};
  const State r{9.0, 9.0};
  const DeltaTrajectory traj = integrate_delta_pos(l, r, p, 2.0, 1e-3);
  const std::size_t last = traj.size() - 1;
  CHECK(traj.eta[last] == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(traj.zeta[last] > 0.0);
}

TEST_CASE("scan: trivial cells and refinement consistency") {
  const SystemParams p = kCase4;
  const State left = kLeft4;
  CHECK(scan_cell(left, left, p, 0.0, 1e-3) == CellState::Outside);

  ScanRequest coarse;
  coarse.t = 0.0;
  coarse.rho_min = 6.0;
  coarse.rho_max = 12.0;
  coarse.u_min = -10.0;
  coarse.u_max = -2.0;
  coarse.n_rho = coarse.n_u = 10;
  const ScanGrid grid = scan_overcompressive(left, p, coarse);
  int inside = 0;
  for (int j = 0; j < grid.n_u(); ++j)
    for (int i = 0; i < grid.n_rho(); ++i)
      if (grid.inside(i, j)) ++inside;
  CHECK(inside > 5);  // the captioned delta panel sits in this window
  CHECK(grid.inside(5, 2));  // rho = 9.33, u = -8.2 nearby the panel state

  // Doubling the grid keeps agreement on coarse cells whose fine children
  // all agree.
  ScanRequest fine = coarse;
  fine.n_rho = fine.n_u = 19;  // children at even indices line up exactly
  const ScanGrid grid2 = scan_overcompressive(left, p, fine);
  for (int j = 0; j < grid.n_u(); ++j) {
    for (int i = 0; i < grid.n_rho(); ++i) {
      const bool coarse_inside = grid.inside(i, j);
      const bool fine_same = grid2.inside(2 * i, 2 * j);
      if (i + 1 < grid.n_rho() && j + 1 < grid.n_u()) {
        const bool c1 = grid2.inside(2 * i + 1, 2 * j);
        const bool c2 = grid2.inside(2 * i, 2 * j + 1);
        const bool c3 = grid2.inside(2 * i + 1, 2 * j + 1);
        if (fine_same == c1 && c1 == c2 && c2 == c3) {
          CHECK(coarse_inside == fine_same);
        }
      }
    }
  }
}

TEST_CASE("scan marks zero-momentum-jump cells distinctly (a > 0)") {
  const SystemParams p = params_with(0.5, 5.0);
  const State left{3.0, 3.0};
  // Right state with rho u = 9 equal to the left: [rho u] = 0.
  CHECK(scan_cell(left, {4.5, 2.0}, p, 0.0, 1e-3) == CellState::MomentumJumpZero);
  ScanRequest req;
  req.t = 0.0;
  req.rho_min = 4.5;
  req.rho_max = 4.5 + 1e-9;
  req.u_min = 2.0;
  req.u_max = 2.0 + 1e-9;
  req.n_rho = req.n_u = 2;
  const ScanGrid grid = scan_overcompressive(left, p, req);
  CHECK(grid.momentum_zero_count > 0);
}
