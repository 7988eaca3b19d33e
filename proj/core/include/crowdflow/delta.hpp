#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "crowdflow/model.hpp"

namespace crowdflow::delta {

/// Jump brackets between fixed side states, convention [x] = x_L - x_R.
/// The flux jumps are affine in I(t):
///   [f1](t) = [rho u mob] + I(t) [rho mob]
///   [f2](t) = [rho u^2 mob] + I(t) [rho u mob]
struct Jumps {
  double d_rho = 0.0;      // [rho]
  double d_m = 0.0;        // [rho u]
  double d_rho_mob = 0.0;  // [rho mob]
  double d_m_mob = 0.0;    // [rho u mob]
  double d_e_mob = 0.0;    // [rho u^2 mob]

  double f1(double I) const { return d_m_mob + I * d_rho_mob; }
  double f2(double I) const { return d_e_mob + I * d_m_mob; }
};

Jumps make_jumps(const State& left, const State& right, const SystemParams& params);

/// Roots of the initial-speed quadratic
///   s^2 [rho] - s ([rho u] + [rho u mob]) + [rho u^2 mob] = 0
/// evaluated at t = 0. Roots are sorted descending.
struct SpeedRoots {
  enum class Kind { Two, Linear, NoRealRoot, NoJump };
  Kind kind = Kind::NoJump;
  double s1 = 0.0;
  double s2 = 0.0;

  int count() const { return kind == Kind::Two ? 2 : (kind == Kind::Linear ? 1 : 0); }
};

SpeedRoots initial_speed_roots(const State& left, const State& right, const SystemParams& params);

/// Same quadratic generalized to a construction spawned at time t (shock
/// speed X = s + I(t)):
///   X^2 [rho] - X ([f1](t) + I[rho] + [rho u]) + (I[f1](t) + [f2](t)) = 0.
SpeedRoots spawn_speed_roots(const State& left, const State& right, const SystemParams& params,
                             double t);

/// Strict overcompressivity of speed xprime at time t:
///   max(lambda_a(R), lambda_0(R)) < xprime < min(lambda_a(L), lambda_0(L)).
bool overcompressive_at(const State& left, const State& right, double xprime, double t,
                        const SystemParams& params);

/// Root selection for the negative-exponent construction at spawn time t.
struct RootChoice {
  enum class Status { Unique, None, Ambiguous, NoJump };
  Status status = Status::NoJump;
  double s = 0.0;  // internal speed eta(t) of the selected root
};

RootChoice select_admissible_root(const State& left, const State& right,
                                  const SystemParams& params, double t = 0.0);

enum class DeltaRegime { NegA, PosA };

/// Singular-shock trajectory: location x(t), strength zeta(t) and internal
/// speed eta(t), sampled at the integrator steps.
struct DeltaTrajectory {
  std::vector<double> times;
  std::vector<double> x;
  std::vector<double> zeta;
  std::vector<double> eta;
  DeltaRegime regime = DeltaRegime::NegA;
  double s_minus = 0.0;

  std::size_t size() const { return times.size(); }
  double x_prime(std::size_t i, const SystemParams& params) const;
};

/// Integrate the a < 0 system x' = eta + I, zeta' = -kappa1, (zeta eta)' =
/// -kappa2 by fixed-step RK4 from (x, zeta) = (0, 0), eta(0) = s_minus.
/// The s_minus root must pass the overcompressive test at t = 0.
DeltaTrajectory integrate_delta_neg(const State& left, const State& right,
                                    const SystemParams& params, double t_end, double dt = 1e-3);

/// Integrate the a > 0 linear system for zeta with
///   x' = [f2]/[rho u] + (zeta I)'/[rho u],
/// reporting the internal velocity as -I(t).
DeltaTrajectory integrate_delta_pos(const State& left, const State& right,
                                    const SystemParams& params, double t_end, double dt = 1e-3);

/// Layer-profile velocity scale eta_0 = -x' (rho_bar/(zeta/2))^a for the
/// positive-exponent construction; finite for zeta > 0.
double shadow_internal_speed_pos(double x_prime, double zeta, const SystemParams& params);

/// Speed x'(t) of a positive-exponent construction spawned at time t
/// (zeta = 0 there). Throws MomentumJumpZero when [rho u] = 0.
double pos_spawn_speed(const State& left, const State& right, const SystemParams& params,
                       double t);

/// Internal-layer exponents (k, beta, gamma, delta) of the two regimes;
/// documentation constants, not runtime data.
inline constexpr std::array<double, 4> kLayerExponentsNegA{1.0, 1.0, 0.0, 0.0};
std::array<double, 4> layer_exponents_pos(const SystemParams& params);

enum class CellState : std::uint8_t { Outside, Inside, Flagged, MomentumJumpZero };

struct ScanRequest {
  double t = 0.0;
  double rho_min = 0.1, rho_max = 15.0;
  double u_min = -10.0, u_max = 10.0;
  int n_rho = 50, n_u = 50;
  double dt = 1e-3;  // integrator and admissibility sampling step
};

/// Grid of delta-admissibility results: a cell is Inside when a delta
/// construction from `left` to the cell state keeps an overcompressive
/// speed at every sampled instant of [0, t].
struct ScanGrid {
  std::vector<double> rho;  // cell-center densities, ascending
  std::vector<double> u;    // cell-center u_tilde values, ascending
  std::vector<CellState> cells;  // row-major, index = iu * n_rho + irho
  std::size_t flagged_count = 0;
  std::size_t momentum_zero_count = 0;

  int n_rho() const { return static_cast<int>(rho.size()); }
  int n_u() const { return static_cast<int>(u.size()); }
  CellState at(int irho, int iu) const { return cells[static_cast<std::size_t>(iu) * rho.size() + irho]; }
  bool inside(int irho, int iu) const { return at(irho, iu) == CellState::Inside; }
};

ScanGrid scan_overcompressive(const State& left, const SystemParams& params,
                              const ScanRequest& request);

/// Admissibility of a single right state under the scan criterion.
CellState scan_cell(const State& left, const State& right, const SystemParams& params,
                    double t, double dt);

}  // namespace crowdflow::delta
