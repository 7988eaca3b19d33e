#include "crowdflow/waves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crowdflow::waves {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double rho_pow(double rho, double a) {
  if (rho <= 0.0) return a > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::exp(a * std::log(rho));
}
}  // namespace

double shock_speed_a(const State& left, double rho_right, double t, const SystemParams& params) {
  if (rho_right == left.rho) throw DegenerateJump("shock_speed_a: equal densities");
  const double u = left.u_tilde + params.integral(t);
  if (params.a_exp == -1.0) return u;
  const double ql = power_ratio(left.rho, params);
  const double qr = power_ratio(rho_right, params);
  const double ratio = (left.rho * ql - rho_right * qr) / (left.rho - rho_right);
  return u * (1.0 - ratio);
}

bool lax_admissible_a(const State& left, const State& right, double t, const SystemParams& params) {
  const double s = shock_speed_a(left, right.rho, t, params);
  const double lam_l = eigenvalues(left, t, params).lambda_a;
  const double lam_r = eigenvalues({right.rho, left.u_tilde}, t, params).lambda_a;
  return lam_r < s && s < lam_l;
}

AWave a_wave(const State& left, double rho_right, double t, const SystemParams& params) {
  if (rho_right == left.rho) throw DegenerateJump("a_wave: equal densities");
  const State right{rho_right, left.u_tilde};
  AWave wave{AWaveKind::Rarefaction, left, right, 0.0,
             eigenvalues(left, t, params).lambda_a, eigenvalues(right, t, params).lambda_a};
  if (params.a_exp == -1.0) {
    wave.kind = AWaveKind::ContactA;
    wave.speed = left.u_tilde + params.integral(t);
    return wave;
  }
  if (lax_admissible_a(left, right, t, params)) {
    wave.kind = AWaveKind::Shock;
    wave.speed = shock_speed_a(left, rho_right, t, params);
    return wave;
  }
  // Not a Lax shock: rarefaction, including the zero-width tie at a
  // degeneracy where the endpoint speeds coincide.
  return wave;
}

double contact_curve_u(const State& base, double rho, double t, const SystemParams& params) {
  const double a = params.a_exp;
  const double rb_a = rho_pow(params.rho_bar, a);
  const double r_a = rho_pow(rho, a);
  if (std::abs(rho - params.rho_bar) <= kDegeneracyTol || r_a == rb_a)
    throw CriticalDensity("contact_curve_u: rho at the critical density pole");
  if (std::abs(base.rho - params.rho_bar) <= kDegeneracyTol)
    throw CriticalDensity("contact_curve_u: base on rho_bar; use contact_vertical");
  const double u = base.u_tilde + params.integral(t);
  const double rl_a = rho_pow(base.rho, a);
  return (r_a - rl_a) / (rb_a - r_a) * u + base.u_tilde;
}

double limiting_curve_u(const State& base, double rho, double t, const SystemParams& params) {
  const double a = params.a_exp;
  const double rb_a = rho_pow(params.rho_bar, a);
  const double r_a = rho_pow(rho, a);
  if (std::abs(rho - params.rho_bar) <= kDegeneracyTol || r_a == rb_a)
    throw CriticalDensity("limiting_curve_u: rho at the critical density pole");
  const double u = base.u_tilde + params.integral(t);
  return r_a / (rb_a - r_a) * u + base.u_tilde;
}

double contact_asymptote_u(const State& base, double t, const SystemParams& params,
                           bool toward_infinity) {
  const double I = params.integral(t);
  const double u = base.u_tilde + I;
  const double q = power_ratio(base.rho, params);
  const double lambda0_minus_I = base.u_tilde - u * q;  // lambda_0(base) - I
  if (params.a_exp > 0.0) return toward_infinity ? -I : lambda0_minus_I;
  return toward_infinity ? lambda0_minus_I : -I;
}

namespace {

// Side-filtered grid with geometric clustering toward the rho_bar pole
// (factor 0.5, 20 levels).
std::vector<double> branch_grid(std::span<const double> rho_grid, double rho_bar, bool below) {
  std::vector<double> out;
  for (double r : rho_grid) {
    if (r <= kVacuumFloor) continue;
    if (below ? (r < rho_bar - kDegeneracyTol) : (r > rho_bar + kDegeneracyTol)) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) return out;
  const double anchor = below ? out.back() : out.front();
  double gap = std::abs(rho_bar - anchor);
  for (int level = 0; level < 20; ++level) {
    gap *= 0.5;
    out.push_back(below ? rho_bar - gap : rho_bar + gap);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ContactBranch sample_branch(BranchKind kind, const State& base, double t, const SystemParams& params,
                            std::span<const double> rho_grid, bool below) {
  ContactBranch branch{kind, base, {}, kNaN};
  const bool limiting = kind == BranchKind::Limiting;
  for (double rho : branch_grid(rho_grid, params.rho_bar, below)) {
    const double u = limiting ? limiting_curve_u(base, rho, t, params)
                              : contact_curve_u(base, rho, t, params);
    if (std::isfinite(u)) branch.samples.push_back({rho, u});
  }
  if (limiting) {
    // rho -> infinity: u -> u_tilde(base); rho -> 0: u -> -I.
    branch.asymptote_u = below ? -params.integral(t) : base.u_tilde;
  } else {
    branch.asymptote_u = contact_asymptote_u(base, t, params, /*toward_infinity=*/!below);
  }
  return branch;
}

}  // namespace

std::vector<ContactBranch> contact_branches(const State& left, double t, const SystemParams& params,
                                            std::span<const double> rho_grid) {
  if (std::abs(left.rho - params.rho_bar) <= kDegeneracyTol)
    throw CriticalDensity("contact_branches: left state on rho_bar");
  const bool left_below = left.rho < params.rho_bar;
  std::vector<ContactBranch> out;
  out.push_back(sample_branch(BranchKind::C0, left, t, params, rho_grid, left_below));
  out.push_back(sample_branch(BranchKind::Mirror, left, t, params, rho_grid, !left_below));
  if (params.a_exp < 0.0)
    out.push_back(sample_branch(BranchKind::Limiting, left, t, params, rho_grid, !left_below));
  return out;
}

ContactBranch contact_vertical(const State& left, double u_target) {
  ContactBranch branch{BranchKind::Vertical, left, {}, kNaN};
  branch.samples.push_back({left.rho, left.u_tilde});
  if (u_target != left.u_tilde) branch.samples.push_back({left.rho, u_target});
  return branch;
}

std::pair<double, double> rh_residual(const State& left, const State& right, double s, double t,
                                      const SystemParams& params) {
  const auto [f1l, f2l] = flux(left, t, params);
  const auto [f1r, f2r] = flux(right, t, params);
  const double r1 = s * (left.rho - right.rho) - (f1l - f1r);
  const double r2 = s * (left.rho * left.u_tilde - right.rho * right.u_tilde) - (f2l - f2r);
  return {r1, r2};
}

}  // namespace crowdflow::waves
