#pragma once

#include <array>
#include <span>
#include <vector>

#include "crowdflow/model.hpp"

namespace crowdflow::waves {

enum class AWaveKind { Shock, Rarefaction, ContactA };

/// One a-family wave along the line u_tilde = u_tilde(left).
/// Shocks and contacts carry a single speed; rarefactions carry the
/// endpoint characteristic speeds only (no closed-form interior profile
/// exists for this system; the finite-volume solver supplies it).
struct AWave {
  AWaveKind kind;
  State left;
  State right;
  double speed = 0.0;        // Shock / ContactA
  double lambda_left = 0.0;  // lambda_a at the left state
  double lambda_right = 0.0; // lambda_a at the right state
};

enum class BranchKind { C0, Mirror, Limiting, Vertical };

/// Sampled branch of a 0-family contact curve, plus its horizontal
/// asymptote value where one exists (NaN otherwise).
struct ContactBranch {
  BranchKind branch;
  State base;
  std::vector<std::array<double, 2>> samples;  // (rho, u_tilde), ordered by rho
  double asymptote_u = 0.0;
};

/// Shock speed of the a-family between left and (rho_right, u_tilde(left)).
/// For a = -1 this collapses to u_tilde(left) + I(t), independent of the
/// densities. Throws DegenerateJump when the densities coincide.
double shock_speed_a(const State& left, double rho_right, double t, const SystemParams& params);

/// Strict Lax criterion lambda_a(R) < s_a < lambda_a(L).
bool lax_admissible_a(const State& left, const State& right, double t, const SystemParams& params);

/// Classify the a-family wave from `left` to density rho_right.
AWave a_wave(const State& left, double rho_right, double t, const SystemParams& params);

/// u_tilde on the 0-contact locus through `base` at density rho:
/// u = (rho^a - rho_base^a)/(rho_bar^a - rho^a) * (u_base + I) + u_base.
/// Throws CriticalDensity at the pole rho = rho_bar (and when the base
/// itself sits on rho_bar; use contact_vertical there).
double contact_curve_u(const State& base, double rho, double t, const SystemParams& params);

/// The rho_L -> infinity limit of the contact locus (negative exponents):
/// u = rho^a/(rho_bar^a - rho^a) * (u_base + I) + u_base.
double limiting_curve_u(const State& base, double rho, double t, const SystemParams& params);

/// Horizontal asymptote of the contact locus through `base` on the branch
/// ending at rho -> 0 or rho -> infinity (as reached from the base's side).
double contact_asymptote_u(const State& base, double t, const SystemParams& params, bool toward_infinity);

/// Sample the contact branches through `left`: the branch containing the
/// base state (C0), the branch across rho_bar (Mirror), and for a < 0 the
/// limiting curve. The caller's grid is refined geometrically toward the
/// pole at rho_bar.
std::vector<ContactBranch> contact_branches(const State& left, double t, const SystemParams& params,
                                            std::span<const double> rho_grid);

/// Vertical 0-contact along rho = rho_bar between u_tilde(left) and
/// u_target; wave speed 0.
ContactBranch contact_vertical(const State& left, double u_target);

/// Rankine-Hugoniot residuals (s[rho] - [f1], s[rho u] - [f2]) with the
/// jump convention [x] = x_left - x_right.
std::pair<double, double> rh_residual(const State& left, const State& right, double s, double t,
                                      const SystemParams& params);

}  // namespace crowdflow::waves
