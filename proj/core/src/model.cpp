#include "crowdflow/model.hpp"

#include <cmath>
#include <limits>

namespace crowdflow {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool SourceTerm::is_zero() const {
  for (const auto& p : pieces) {
    if (p.value != 0.0) return false;
  }
  return true;
}

void SourceTerm::validate() const {
  if (pieces.empty()) throw ValidationError("source: needs at least one piece");
  if (pieces.front().start_time != 0.0)
    throw ValidationError("source: first piece must start at t = 0");
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (!(pieces[i].start_time > pieces[i - 1].start_time))
      throw ValidationError("source: start times must be strictly increasing");
  }
}

double SourceTerm::value(double t) const {
  double v = pieces.front().value;
  for (const auto& p : pieces) {
    if (t >= p.start_time) v = p.value;
  }
  return v;
}

double SourceTerm::integral(double t) const {
  if (t <= 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double lo = pieces[i].start_time;
    if (lo >= t) break;
    const double hi = (i + 1 < pieces.size()) ? std::min(pieces[i + 1].start_time, t) : t;
    acc += pieces[i].value * (hi - lo);
  }
  return acc;
}

void SystemParams::validate() const {
  if (a_exp == 0.0) throw ValidationError("params: a_exp must be nonzero");
  if (!(rho_bar > 0.0)) throw ValidationError("params: rho_bar must be positive");
  source.validate();
}

ARegime a_regime(const SystemParams& params) {
  if (params.a_exp < -1.0) return ARegime::BelowMinusOne;
  if (params.a_exp == -1.0) return ARegime::MinusOne;
  if (params.a_exp < 0.0) return ARegime::MinusOneToZero;
  return ARegime::Positive;
}

double power_ratio(double rho, const SystemParams& params) {
  if (rho <= 0.0) return params.a_exp > 0.0 ? 0.0 : kInf;
  const double ratio = rho / params.rho_bar;
  if (ratio == 1.0) return 1.0;
  return std::exp(params.a_exp * std::log(ratio));
}

double mobility(double rho, const SystemParams& params) {
  if (params.a_exp < 0.0 && rho <= kVacuumFloor)
    throw VacuumSingularity("mobility: vacuum density with negative exponent");
  return 1.0 - power_ratio(rho, params);
}

double source_integral(const SourceTerm& source, double t) { return source.integral(t); }

std::pair<double, double> flux(const State& state, double t, const SystemParams& params) {
  const double u = state.u_tilde + params.integral(t);
  const double f1 = state.rho * u * mobility(state.rho, params);
  return {f1, state.u_tilde * f1};
}

Eigenpair eigenvalues(const State& state, double t, const SystemParams& params) {
  const double u = state.u_tilde + params.integral(t);
  if (state.rho <= kVacuumFloor) {
    if (params.a_exp < 0.0) {
      // Vacuum with negative exponent: both speeds blow up; the sign follows
      // the physical velocity, and they coincide (strict hyperbolicity lost).
      const double v = u > 0.0 ? kInf : (u < 0.0 ? -kInf : 0.0);
      return {v, v};
    }
    return {u, u};  // a > 0: (rho/rho_bar)^a -> 0
  }
  const double q = power_ratio(state.rho, params);
  return {u * (1.0 - (params.a_exp + 1.0) * q), u * (1.0 - q)};
}

std::pair<Vec2, Vec2> eigenvectors(const State& state, double t, const SystemParams& params) {
  if (params.a_exp < 0.0 && state.rho <= kVacuumFloor)
    throw VacuumSingularity("eigenvectors: vacuum density with negative exponent");
  const double q = power_ratio(state.rho, params);
  const double u = state.u_tilde + params.integral(t);
  return {Vec2{1.0, 0.0}, Vec2{state.rho * (1.0 - q), params.a_exp * q * u}};
}

Conserved to_conserved(const State& state) {
  if (state.rho <= kVacuumFloor) return {state.rho, 0.0};
  return {state.rho, state.rho * state.u_tilde};
}

State to_state(const Conserved& cons) {
  if (cons.rho <= kVacuumFloor) return {cons.rho, 0.0};
  return {cons.rho, cons.m / cons.rho};
}

double physical_velocity(const State& state, double t, const SystemParams& params) {
  return state.u_tilde + params.integral(t);
}

Mat2 flux_jacobian(const State& state, double t, const SystemParams& params) {
  const double q = power_ratio(state.rho, params);
  const double u = state.u_tilde + params.integral(t);
  const double lambda_a = u * (1.0 - (params.a_exp + 1.0) * q);
  const double mob = 1.0 - q;
  return {lambda_a, state.rho * mob,
          state.u_tilde * lambda_a, state.rho * mob * (state.u_tilde + u)};
}

Mat2 conserved_jacobian(const State& state) {
  return {1.0, 0.0, state.u_tilde, state.rho};
}

}  // namespace crowdflow
