#pragma once

#include <array>
#include <utility>
#include <vector>

#include "crowdflow/errors.hpp"

namespace crowdflow {

/// Densities at or below this floor count as vacuum in the curve algebra.
inline constexpr double kVacuumFloor = 1e-10;

/// Absolute tolerance for the degeneracy predicates (rho vs rho_bar,
/// u_tilde vs the moving asymptote A(t)).
inline constexpr double kDegeneracyTol = 1e-12;

/// Piecewise-constant forcing a(t): left-closed pieces, first start time 0,
/// start times strictly increasing. The running integral I(t) is exact.
struct SourceTerm {
  struct Piece {
    double start_time = 0.0;
    double value = 0.0;
    friend bool operator==(const Piece&, const Piece&) = default;
  };

  std::vector<Piece> pieces{{0.0, 0.0}};

  static SourceTerm zero() { return SourceTerm{}; }
  static SourceTerm constant(double value) { return SourceTerm{{{0.0, value}}}; }

  bool is_zero() const;
  void validate() const;

  /// a(t) for t >= 0.
  double value(double t) const;
  /// I(t) = integral of a over [0, t]; piecewise linear, exact.
  double integral(double t) const;
  /// A(t) = -I(t), the moving asymptote.
  double asymptote(double t) const { return -integral(t); }

  friend bool operator==(const SourceTerm&, const SourceTerm&) = default;
};

struct SystemParams {
  double a_exp = -1.5;   ///< exponent a, nonzero
  double rho_bar = 5.0;  ///< critical density, positive
  SourceTerm source;

  void validate() const;
  double integral(double t) const { return source.integral(t); }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Sign regime of the exponent; the wave-curve tables split on these.
enum class ARegime { BelowMinusOne, MinusOne, MinusOneToZero, Positive };

ARegime a_regime(const SystemParams& params);

/// Point in the transformed state plane (rho, u_tilde).
struct State {
  double rho = 0.0;
  double u_tilde = 0.0;
  friend bool operator==(const State&, const State&) = default;
};

/// Conserved pair (rho, m = rho * u_tilde).
struct Conserved {
  double rho = 0.0;
  double m = 0.0;
  friend bool operator==(const Conserved&, const Conserved&) = default;
};

/// Characteristic speeds; extended reals (+-inf) encode vacuum blow-up.
struct Eigenpair {
  double lambda_a = 0.0;
  double lambda_0 = 0.0;
};

/// 2-vector in (rho, u_tilde) coordinates.
struct Vec2 {
  double d_rho = 0.0;
  double d_u = 0.0;
};

/// 2x2 matrix, rows indexed by equation, columns by (rho, u_tilde).
struct Mat2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;
};

/// (rho/rho_bar)^a, computed as exp(a*log(rho/rho_bar)); the single source
/// of rounding for all power evaluations.
double power_ratio(double rho, const SystemParams& params);

/// 1 - (rho/rho_bar)^a. Throws VacuumSingularity for rho <= floor, a < 0.
double mobility(double rho, const SystemParams& params);

/// Exact integral I(t) of the source.
double source_integral(const SourceTerm& source, double t);

/// Flux (f1, f2) of the transformed conservative system at time t.
/// f2 is computed as u_tilde * f1 so the identity holds bitwise.
std::pair<double, double> flux(const State& state, double t, const SystemParams& params);

Eigenpair eigenvalues(const State& state, double t, const SystemParams& params);

/// Right eigenvectors (R_a, R_0) in (rho, u_tilde) coordinates.
std::pair<Vec2, Vec2> eigenvectors(const State& state, double t, const SystemParams& params);

Conserved to_conserved(const State& state);
State to_state(const Conserved& cons);

/// u = u_tilde + I(t).
double physical_velocity(const State& state, double t, const SystemParams& params);

/// Jacobian of the flux with respect to (rho, u_tilde).
Mat2 flux_jacobian(const State& state, double t, const SystemParams& params);

/// Jacobian of the conserved map (rho, rho*u_tilde) w.r.t. (rho, u_tilde).
Mat2 conserved_jacobian(const State& state);

}  // namespace crowdflow
