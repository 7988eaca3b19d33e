#include "crowdflow/delta.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace crowdflow::delta {

namespace {
constexpr double kStrengthTol = 1e-12;

SpeedRoots solve_quadratic(double A, double B, double C) {
  // A s^2 + B s + C = 0, roots descending.
  SpeedRoots out;
  if (A == 0.0) {
    if (B == 0.0) {
      out.kind = SpeedRoots::Kind::NoRealRoot;
      return out;
    }
    out.kind = SpeedRoots::Kind::Linear;
    out.s1 = out.s2 = -C / B;
    return out;
  }
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) {
    out.kind = SpeedRoots::Kind::NoRealRoot;
    return out;
  }
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
  double r1 = q / A;
  double r2 = (q != 0.0) ? C / q : -B / A - r1;
  if (r1 < r2) std::swap(r1, r2);
  out.kind = SpeedRoots::Kind::Two;
  out.s1 = r1;
  out.s2 = r2;
  return out;
}
}  // namespace

Jumps make_jumps(const State& left, const State& right, const SystemParams& params) {
  const double mob_l = mobility(left.rho, params);
  const double mob_r = mobility(right.rho, params);
  Jumps j;
  j.d_rho = left.rho - right.rho;
  j.d_m = left.rho * left.u_tilde - right.rho * right.u_tilde;
  j.d_rho_mob = left.rho * mob_l - right.rho * mob_r;
  j.d_m_mob = left.rho * left.u_tilde * mob_l - right.rho * right.u_tilde * mob_r;
  j.d_e_mob = left.rho * left.u_tilde * left.u_tilde * mob_l -
              right.rho * right.u_tilde * right.u_tilde * mob_r;
  return j;
}

SpeedRoots initial_speed_roots(const State& left, const State& right, const SystemParams& params) {
  if (left == right) {
    SpeedRoots out;
    out.kind = SpeedRoots::Kind::NoJump;
    return out;
  }
  const Jumps j = make_jumps(left, right, params);
  return solve_quadratic(j.d_rho, -(j.d_m + j.d_m_mob), j.d_e_mob);
}

SpeedRoots spawn_speed_roots(const State& left, const State& right, const SystemParams& params,
                             double t) {
  if (left == right) {
    SpeedRoots out;
    out.kind = SpeedRoots::Kind::NoJump;
    return out;
  }
  const Jumps j = make_jumps(left, right, params);
  const double I = params.integral(t);
  return solve_quadratic(j.d_rho, -(j.f1(I) + I * j.d_rho + j.d_m), I * j.f1(I) + j.f2(I));
}

bool overcompressive_at(const State& left, const State& right, double xprime, double t,
                        const SystemParams& params) {
  const Eigenpair el = eigenvalues(left, t, params);
  const Eigenpair er = eigenvalues(right, t, params);
  const double lower = std::max(er.lambda_a, er.lambda_0);
  const double upper = std::min(el.lambda_a, el.lambda_0);
  return lower < xprime && xprime < upper;
}

RootChoice select_admissible_root(const State& left, const State& right,
                                  const SystemParams& params, double t) {
  RootChoice choice;
  const SpeedRoots roots = spawn_speed_roots(left, right, params, t);
  if (roots.kind == SpeedRoots::Kind::NoJump) return choice;
  choice.status = RootChoice::Status::None;
  if (roots.kind == SpeedRoots::Kind::NoRealRoot) return choice;
  const double I = params.integral(t);
  const bool pass1 = overcompressive_at(left, right, roots.s1, t, params);
  const bool pass2 = roots.kind == SpeedRoots::Kind::Two &&
                     roots.s2 != roots.s1 &&
                     overcompressive_at(left, right, roots.s2, t, params);
  if (pass1 && pass2) {
    choice.status = RootChoice::Status::Ambiguous;
    return choice;
  }
  if (pass1 || pass2) {
    choice.status = RootChoice::Status::Unique;
    choice.s = (pass1 ? roots.s1 : roots.s2) - I;  // internal speed eta = X - I
  }
  return choice;
}

double DeltaTrajectory::x_prime(std::size_t i, const SystemParams& params) const {
  return eta[i] + params.integral(times[i]);
}

DeltaTrajectory integrate_delta_neg(const State& left, const State& right,
                                    const SystemParams& params, double t_end, double dt) {
  if (!(params.a_exp < 0.0))
    throw Inadmissible("integrate_delta_neg: construction requires a < 0");
  if (left == right) throw NoJump("integrate_delta_neg: identical side states");
  const RootChoice choice = select_admissible_root(left, right, params, 0.0);
  if (choice.status == RootChoice::Status::None)
    throw Inadmissible("integrate_delta_neg: no overcompressive root at t = 0");
  if (choice.status == RootChoice::Status::Ambiguous)
    throw Inadmissible("integrate_delta_neg: both roots overcompressive at t = 0");
  const double s0 = choice.s;

  const Jumps j = make_jumps(left, right, params);
  // State y = (x, zeta, w) with w = zeta * eta; eta = w / zeta away from the
  // zeta = 0 start, s0 analytically at it.
  struct Y {
    double x, zeta, w;
  };
  const auto eta_of = [&](const Y& y) { return y.zeta > 0.0 ? y.w / y.zeta : s0; };
  const auto deriv = [&](double time, const Y& y) -> Y {
    const double I = params.integral(time);
    const double xp = eta_of(y) + I;
    return {xp, -(xp * j.d_rho - j.f1(I)), -(xp * j.d_m - j.f2(I))};
  };

  DeltaTrajectory traj;
  traj.regime = DeltaRegime::NegA;
  traj.s_minus = s0;
  Y y{0.0, 0.0, 0.0};
  double t = 0.0;
  const auto record = [&] {
    traj.times.push_back(t);
    traj.x.push_back(y.x);
    traj.zeta.push_back(y.zeta);
    traj.eta.push_back(eta_of(y));
  };
  record();
  const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-12));
  for (long n = 0; n < steps; ++n) {
    const double h = std::min(dt, t_end - t);
    if (h <= 0.0) break;
    const Y k1 = deriv(t, y);
    const Y k2 = deriv(t + 0.5 * h, {y.x + 0.5 * h * k1.x, y.zeta + 0.5 * h * k1.zeta, y.w + 0.5 * h * k1.w});
    const Y k3 = deriv(t + 0.5 * h, {y.x + 0.5 * h * k2.x, y.zeta + 0.5 * h * k2.zeta, y.w + 0.5 * h * k2.w});
    const Y k4 = deriv(t + h, {y.x + h * k3.x, y.zeta + h * k3.zeta, y.w + h * k3.w});
    y.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    y.zeta += h / 6.0 * (k1.zeta + 2.0 * k2.zeta + 2.0 * k3.zeta + k4.zeta);
    y.w += h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);
    t += h;
    if (y.zeta < -kStrengthTol)
      throw StrengthNegative("integrate_delta_neg: zeta crossed below zero");
    record();
  }
  return traj;
}

namespace {

// The a > 0 construction: zeta solves a scalar linear ODE and x' follows
// from the second jump relation plus the (zeta I)' correction.
struct PosOde {
  Jumps j;
  double B;  // [rho]/[rho u]
  const SystemParams* params;

  PosOde(const State& left, const State& right, const SystemParams& p)
      : j(make_jumps(left, right, p)), B(0.0), params(&p) {
    if (j.d_m == 0.0) throw MomentumJumpZero("delta (a > 0): [rho u] = 0");
    B = j.d_rho / j.d_m;
  }

  double zeta_prime(double time, double zeta) const {
    const double I = params->integral(time);
    const double denom = 1.0 + B * I;
    if (denom == 0.0) throw Inadmissible("delta (a > 0): linear ODE coefficient vanished");
    return (j.f1(I) - j.d_rho * j.f2(I) / j.d_m - zeta * B * params->source.value(time)) / denom;
  }

  double x_prime(double time, double zeta) const {
    const double I = params->integral(time);
    return (j.f2(I) + zeta_prime(time, zeta) * I + zeta * params->source.value(time)) / j.d_m;
  }
};

}  // namespace

DeltaTrajectory integrate_delta_pos(const State& left, const State& right,
                                    const SystemParams& params, double t_end, double dt) {
  if (!(params.a_exp > 0.0))
    throw Inadmissible("integrate_delta_pos: construction requires a > 0");
  if (left == right) throw NoJump("integrate_delta_pos: identical side states");
  const PosOde ode(left, right, params);
  const auto zeta_prime = [&](double time, double zeta) { return ode.zeta_prime(time, zeta); };
  const auto x_prime = [&](double time, double zeta) { return ode.x_prime(time, zeta); };

  if (!overcompressive_at(left, right, x_prime(0.0, 0.0), 0.0, params))
    throw Inadmissible("integrate_delta_pos: speed not overcompressive at t = 0");

  DeltaTrajectory traj;
  traj.regime = DeltaRegime::PosA;
  traj.s_minus = x_prime(0.0, 0.0);
  double x = 0.0, zeta = 0.0, t = 0.0;
  const auto record = [&] {
    traj.times.push_back(t);
    traj.x.push_back(x);
    traj.zeta.push_back(zeta);
    traj.eta.push_back(-params.integral(t));  // internal velocity -I(t)
  };
  record();
  const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-12));
  for (long n = 0; n < steps; ++n) {
    const double h = std::min(dt, t_end - t);
    if (h <= 0.0) break;
    const double kz1 = zeta_prime(t, zeta);
    const double kx1 = x_prime(t, zeta);
    const double kz2 = zeta_prime(t + 0.5 * h, zeta + 0.5 * h * kz1);
    const double kx2 = x_prime(t + 0.5 * h, zeta + 0.5 * h * kz1);
    const double kz3 = zeta_prime(t + 0.5 * h, zeta + 0.5 * h * kz2);
    const double kx3 = x_prime(t + 0.5 * h, zeta + 0.5 * h * kz2);
    const double kz4 = zeta_prime(t + h, zeta + h * kz3);
    const double kx4 = x_prime(t + h, zeta + h * kz3);
    zeta += h / 6.0 * (kz1 + 2.0 * kz2 + 2.0 * kz3 + kz4);
    x += h / 6.0 * (kx1 + 2.0 * kx2 + 2.0 * kx3 + kx4);
    t += h;
    if (zeta < -kStrengthTol)
      throw StrengthNegative("integrate_delta_pos: zeta crossed below zero");
    record();
  }
  return traj;
}

double pos_spawn_speed(const State& left, const State& right, const SystemParams& params,
                       double t) {
  return PosOde(left, right, params).x_prime(t, 0.0);
}

double shadow_internal_speed_pos(double x_prime, double zeta, const SystemParams& params) {
  if (zeta <= 0.0) return -std::copysign(std::numeric_limits<double>::infinity(), x_prime);
  return -x_prime * std::exp(params.a_exp * std::log(params.rho_bar / (0.5 * zeta)));
}

std::array<double, 4> layer_exponents_pos(const SystemParams& params) {
  return {1.0, 1.0, -params.a_exp, -params.a_exp};
}

CellState scan_cell(const State& left, const State& right, const SystemParams& params,
                    double t, double dt) {
  if (left == right || right.rho <= kVacuumFloor) return CellState::Outside;
  if (params.a_exp < 0.0) {
    const RootChoice choice = select_admissible_root(left, right, params, 0.0);
    if (choice.status == RootChoice::Status::Ambiguous) return CellState::Flagged;
    if (choice.status != RootChoice::Status::Unique) return CellState::Outside;
    if (t <= 0.0) return CellState::Inside;
    try {
      const DeltaTrajectory traj = integrate_delta_neg(left, right, params, t, dt);
      for (std::size_t i = 0; i < traj.size(); ++i) {
        if (!overcompressive_at(left, right, traj.x_prime(i, params), traj.times[i], params))
          return CellState::Outside;
      }
    } catch (const Error&) {
      return CellState::Outside;
    }
    return CellState::Inside;
  }
  // a > 0
  try {
    const PosOde ode(left, right, params);
    if (!overcompressive_at(left, right, ode.x_prime(0.0, 0.0), 0.0, params))
      return CellState::Outside;
    if (t <= 0.0) return CellState::Inside;
    const DeltaTrajectory traj = integrate_delta_pos(left, right, params, t, dt);
    for (std::size_t i = 0; i < traj.size(); ++i) {
      if (!overcompressive_at(left, right, ode.x_prime(traj.times[i], traj.zeta[i]),
                              traj.times[i], params))
        return CellState::Outside;
    }
  } catch (const MomentumJumpZero&) {
    return CellState::MomentumJumpZero;
  } catch (const Error&) {
    return CellState::Outside;
  }
  return CellState::Inside;
}

ScanGrid scan_overcompressive(const State& left, const SystemParams& params,
                              const ScanRequest& request) {
  ScanGrid grid;
  const int nr = std::max(request.n_rho, 2);
  const int nu = std::max(request.n_u, 2);
  grid.rho.resize(nr);
  grid.u.resize(nu);
  for (int i = 0; i < nr; ++i)
    grid.rho[i] = request.rho_min + (request.rho_max - request.rho_min) * i / (nr - 1.0);
  for (int iu = 0; iu < nu; ++iu)
    grid.u[iu] = request.u_min + (request.u_max - request.u_min) * iu / (nu - 1.0);
  grid.cells.assign(static_cast<std::size_t>(nr) * nu, CellState::Outside);

  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  std::atomic<int> next_row{0};
  std::vector<std::size_t> flagged(workers, 0), mzero(workers, 0);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int iu = next_row.fetch_add(1); iu < nu; iu = next_row.fetch_add(1)) {
        for (int ir = 0; ir < nr; ++ir) {
          const CellState cell =
              scan_cell(left, {grid.rho[ir], grid.u[iu]}, params, request.t, request.dt);
          grid.cells[static_cast<std::size_t>(iu) * nr + ir] = cell;
          if (cell == CellState::Flagged) ++flagged[w];
          if (cell == CellState::MomentumJumpZero) ++mzero[w];
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (unsigned w = 0; w < workers; ++w) {
    grid.flagged_count += flagged[w];
    grid.momentum_zero_count += mzero[w];
  }
  return grid;
}

}  // namespace crowdflow::delta
