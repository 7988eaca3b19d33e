#include "crowdflow/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace crowdflow::classify {

namespace {

constexpr double kOrderTol = 1e-9;      // slack in the speed-ordering check
constexpr double kZeroWidthTol = 1e-9;  // waves narrower than this are dropped
constexpr double kRhoTol = 1e-12;       // bisection tolerance in rho

// Middle plateaus below this fraction of rho_bar read as vacuum states; the
// dissipative solver renders them as density dips toward zero.
constexpr double kVacuumPlateauFrac = 0.01;

double vacuum_plateau_threshold(const SystemParams& params) {
  return kVacuumPlateauFrac * params.rho_bar;
}

double lambda0(const State& s, double t, const SystemParams& params) {
  return eigenvalues(s, t, params).lambda_0;
}

double lambda_a(const State& s, double t, const SystemParams& params) {
  return eigenvalues(s, t, params).lambda_a;
}

// ---------------------------------------------------------------------------
// Root finding on contact branches.

template <typename F>
double bisect(const F& f, double lo, double hi, double f_lo) {
  for (int it = 0; it < 200 && hi - lo > kRhoTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (!std::isfinite(f_mid)) break;
    if ((f_mid <= 0.0) == (f_lo <= 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// All rho with contact_curve_u(base, rho) == target_u. In the variable
// z = rho^a the contact relation is a Moebius map, so the horizontal line
// u = target crosses the two branches at most once in total and the
// crossing inverts in closed form:
//   z* = (r z_bar + z_base) / (1 + r),  r = (target - u_base) / (u_base + I).
// A few bisection steps polish the closed form against the evaluator.
std::vector<double> curve_intersections(const State& base, double target_u, double t,
                                        const SystemParams& params) {
  std::vector<double> roots;
  const double I = params.integral(t);
  const double u_rel = base.u_tilde + I;
  if (u_rel == 0.0) return roots;
  const double r = (target_u - base.u_tilde) / u_rel;
  const double denom = 1.0 + r;
  if (std::abs(denom) < 1e-14) return roots;  // target on the asymptote
  const double a = params.a_exp;
  const double z_bar = std::exp(a * std::log(params.rho_bar));
  const double z_base = std::exp(a * std::log(base.rho));
  const double z_star = (r * z_bar + z_base) / denom;
  if (!(z_star > 0.0) || !std::isfinite(z_star)) return roots;
  double rho = std::exp(std::log(z_star) / a);
  if (!std::isfinite(rho) || rho <= 0.0 || std::abs(rho - params.rho_bar) <= kDegeneracyTol)
    return roots;

  const auto g = [&](double q) { return waves::contact_curve_u(base, q, t, params) - target_u; };
  const double width = std::max(1e-9, 1e-9 * rho);
  try {
    const double g_lo = g(rho - width);
    const double g_hi = g(rho + width);
    if (std::isfinite(g_lo) && std::isfinite(g_hi) && (g_lo < 0.0) != (g_hi < 0.0))
      rho = bisect(g, rho - width, rho + width, g_lo);
  } catch (const CriticalDensity&) {
    return roots;
  }
  roots.push_back(rho);
  return roots;
}

// ---------------------------------------------------------------------------
// Wave-descriptor assembly.

struct MaybeWave {
  bool ok = true;                         // construction valid
  std::optional<WaveDescriptor> wave;     // nullopt: zero width, dropped
};

MaybeWave a_family_wave(const State& from, double rho_to, double t, const SystemParams& params) {
  MaybeWave out;
  if (std::abs(rho_to - from.rho) <= kZeroWidthTol) return out;
  const waves::AWave aw = waves::a_wave(from, rho_to, t, params);
  WaveDescriptor d;
  d.left = aw.left;
  d.right = aw.right;
  switch (aw.kind) {
    case waves::AWaveKind::Shock:
      d.type = WaveType::Shock_a;
      d.s_left = d.s_right = aw.speed;
      break;
    case waves::AWaveKind::ContactA:
      d.type = WaveType::Contact_a;
      d.s_left = d.s_right = aw.speed;
      break;
    case waves::AWaveKind::Rarefaction:
      d.type = WaveType::Rarefaction_a;
      d.s_left = aw.lambda_left;
      d.s_right = aw.lambda_right;
      if (d.s_left > d.s_right + kOrderTol) out.ok = false;
      break;
  }
  out.wave = d;
  return out;
}

MaybeWave contact0_wave(const State& from, const State& to, double t, const SystemParams& params) {
  MaybeWave out;
  if (std::abs(to.rho - from.rho) <= kZeroWidthTol && std::abs(to.u_tilde - from.u_tilde) <= kZeroWidthTol)
    return out;
  WaveDescriptor d;
  d.left = from;
  d.right = to;
  const bool vertical = std::abs(from.rho - params.rho_bar) <= kDegeneracyTol &&
                        std::abs(to.rho - params.rho_bar) <= kDegeneracyTol;
  if (vertical) {
    d.type = WaveType::Vertical_C0;
    d.s_left = d.s_right = 0.0;
  } else {
    // A 0-contact must connect states on one side of rho_bar; the mirror
    // branch only bounds regions. Crossings go through the vertical contact.
    if ((from.rho - params.rho_bar) * (to.rho - params.rho_bar) < 0.0) {
      out.ok = false;
      out.wave = WaveDescriptor{};
      return out;
    }
    d.type = WaveType::Contact_0;
    const double l_from = lambda0(from, t, params);
    const double l_to = lambda0(to, t, params);
    if (std::isfinite(l_from) && std::isfinite(l_to)) {
      if (std::abs(l_from - l_to) > 1e-6 * (1.0 + std::abs(l_from))) out.ok = false;
      d.s_left = d.s_right = l_to;
    } else {
      d.s_left = d.s_right = std::isfinite(l_to) ? l_to : l_from;
    }
  }
  out.wave = d;
  return out;
}

bool speeds_ordered(const std::vector<WaveDescriptor>& waves) {
  for (std::size_t i = 0; i + 1 < waves.size(); ++i) {
    if (waves[i].s_right > waves[i + 1].s_left + kOrderTol) return false;
  }
  return true;
}

char family_subscript(const std::vector<WaveDescriptor>& waves) {
  if (waves.empty()) return ' ';
  switch (waves.front().type) {
    case WaveType::Shock_a:
    case WaveType::Rarefaction_a:
    case WaveType::Contact_a:
      return 'a';
    case WaveType::Contact_0:
    case WaveType::Vertical_C0:
      return '0';
    default:
      return ' ';
  }
}

std::string token(WaveType type) {
  switch (type) {
    case WaveType::Shock_a: return "Sa";
    case WaveType::Rarefaction_a: return "Ra";
    case WaveType::Contact_a: return "Ca";
    case WaveType::Contact_0: return "C0";
    case WaveType::Vertical_C0: return "C0";
    case WaveType::Delta: return "D";
    case WaveType::Vacuum: return "V";
  }
  return "?";
}

std::string make_tag(const std::vector<WaveDescriptor>& waves, bool concat) {
  std::string tag;
  for (const auto& w : waves) {
    if (!tag.empty() && !concat) tag += '+';
    tag += token(w.type);
  }
  return tag;
}

Region classical_region(const std::vector<WaveDescriptor>& waves) {
  for (const auto& w : waves) {
    if (w.type == WaveType::Shock_a) return Region::I;
    if (w.type == WaveType::Rarefaction_a) return Region::II;
    if (w.type == WaveType::Contact_a) return Region::III;
  }
  return Region::I;  // bare 0-contact sits on the I/II boundary
}

WavePattern finish_pattern(Region region, std::vector<WaveDescriptor> waves,
                           std::vector<State> middles) {
  WavePattern p;
  p.region = region;
  p.subscript = (region == Region::I || region == Region::II || region == Region::III ||
                 (region == Region::IV && !waves.empty() && waves.front().type == WaveType::Rarefaction_a))
                    ? family_subscript(waves)
                    : ' ';
  p.tag = make_tag(waves, region == Region::V);
  p.waves = std::move(waves);
  p.middle_states = std::move(middles);
  return p;
}

// Insert a vacuum segment at middle plateaus whose density reads as vacuum;
// relabels the pattern as Region V.
std::optional<WavePattern> relabel_vacuum_plateau(const WavePattern& pattern,
                                                  const SystemParams& params) {
  const double threshold = vacuum_plateau_threshold(params);
  std::vector<WaveDescriptor> waves;
  bool inserted = false;
  for (std::size_t i = 0; i < pattern.waves.size(); ++i) {
    waves.push_back(pattern.waves[i]);
    if (i + 1 < pattern.waves.size()) {
      const State& mid = pattern.waves[i].right;
      if (mid.rho < threshold) {
        WaveDescriptor vac;
        vac.type = WaveType::Vacuum;
        vac.left = mid;
        vac.right = pattern.waves[i + 1].left;
        vac.s_left = pattern.waves[i].s_right;
        vac.s_right = pattern.waves[i + 1].s_left;
        waves.push_back(vac);
        inserted = true;
      }
    }
  }
  if (!inserted) return std::nullopt;
  WavePattern out = finish_pattern(Region::V, std::move(waves), pattern.middle_states);
  out.subscript = ' ';
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* wave_type_name(WaveType type) {
  switch (type) {
    case WaveType::Shock_a: return "Shock_a";
    case WaveType::Rarefaction_a: return "Rarefaction_a";
    case WaveType::Contact_a: return "Contact_a";
    case WaveType::Contact_0: return "Contact_0";
    case WaveType::Vertical_C0: return "Vertical_C0";
    case WaveType::Delta: return "Delta";
    case WaveType::Vacuum: return "Vacuum";
  }
  return "?";
}

const char* region_name(Region region) {
  switch (region) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::V: return "V";
    case Region::VI: return "VI";
    case Region::Unclassifiable: return "unclassifiable";
  }
  return "?";
}

std::vector<WaveType> WavePattern::sequence() const {
  std::vector<WaveType> seq;
  seq.reserve(waves.size());
  for (const auto& w : waves) seq.push_back(w.type);
  return seq;
}

std::string WavePattern::region_label() const {
  std::string label = region_name(region);
  if (region == Region::V) {
    label += "_" + tag;
  } else if (subscript != ' ') {
    label += std::string("_") + subscript;
  }
  return label;
}

CaseId case_id(const SystemParams& params, const State& left, double t) {
  const double I = params.integral(t);
  const double rel = left.u_tilde + I;
  if (std::abs(rel) < kDegeneracyTol)
    throw FullDegeneracy("case_id: u_tilde(L) on the asymptote A(t)");
  CaseId id;
  id.velocity_side = rel < 0.0 ? VelocitySide::Below : VelocitySide::Above;
  const double drho = left.rho - params.rho_bar;
  id.density_side = std::abs(drho) <= kDegeneracyTol
                        ? DensitySide::Equal
                        : (drho < 0.0 ? DensitySide::Below : DensitySide::Above);
  int base = 0;
  switch (a_regime(params)) {
    case ARegime::BelowMinusOne: id.regime = Regime::ALessM1; base = 1; break;
    case ARegime::MinusOne: id.regime = Regime::AEqM1; base = 7; break;
    case ARegime::MinusOneToZero: id.regime = Regime::AInM10; base = 13; break;
    case ARegime::Positive: id.regime = Regime::APos; base = 19; break;
  }
  const int vel_offset = id.velocity_side == VelocitySide::Above ? 3 : 0;
  const int dens_offset = id.density_side == DensitySide::Below ? 0
                          : id.density_side == DensitySide::Equal ? 1
                                                                  : 2;
  id.index = base + vel_offset + dens_offset;
  return id;
}

std::vector<double> case_transition_times(const SystemParams& params, const State& left,
                                          double horizon) {
  std::vector<double> times;
  const auto& pieces = params.source.pieces;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double lo = pieces[i].start_time;
    if (lo >= horizon) break;
    const double hi = (i + 1 < pieces.size()) ? std::min(pieces[i + 1].start_time, horizon) : horizon;
    const double v = pieces[i].value;
    if (v == 0.0) continue;
    const double I_lo = params.integral(lo);
    // Solve u_tilde(L) + I_lo + v (t - lo) = 0 on [lo, hi].
    const double t_star = lo - (left.u_tilde + I_lo) / v;
    if (t_star > lo + 1e-15 && t_star <= hi && t_star > 0.0) times.push_back(t_star);
  }
  return times;
}

std::vector<State> classical_middle_candidates(const State& left, const State& right,
                                               MiddleOrder order, double t,
                                               const SystemParams& params) {
  std::vector<State> middles;
  if (order == MiddleOrder::AFirst) {
    // a-wave along u_tilde(L), then 0-contact into R: M on the contact
    // locus through R at height u_tilde(L).
    if (std::abs(right.rho - params.rho_bar) <= kDegeneracyTol) {
      middles.push_back({params.rho_bar, left.u_tilde});  // vertical contact into R
      return middles;
    }
    if (std::abs(right.u_tilde - left.u_tilde) <= kZeroWidthTol) {
      middles.push_back(right);  // zero-width contact
      return middles;
    }
    for (double rho : curve_intersections(right, left.u_tilde, t, params))
      middles.push_back({rho, left.u_tilde});
  } else {
    // 0-contact from L, then a-wave at height u_tilde(R).
    if (std::abs(left.rho - params.rho_bar) <= kDegeneracyTol) {
      middles.push_back({params.rho_bar, right.u_tilde});  // vertical contact from L
      return middles;
    }
    if (std::abs(right.u_tilde - left.u_tilde) <= kZeroWidthTol) {
      middles.push_back({left.rho, right.u_tilde});
      return middles;
    }
    for (double rho : curve_intersections(left, right.u_tilde, t, params))
      middles.push_back({rho, right.u_tilde});
  }
  return middles;
}

namespace {

std::optional<WavePattern> try_classical_order(const State& left, const State& right,
                                               MiddleOrder order, double t,
                                               const SystemParams& params) {
  for (const State& mid : classical_middle_candidates(left, right, order, t, params)) {
    if (mid.rho <= kVacuumFloor) continue;
    std::vector<WaveDescriptor> waves;
    bool valid = true;
    const auto push = [&](const MaybeWave& mw) {
      if (!mw.ok) valid = false;
      else if (mw.wave) waves.push_back(*mw.wave);
    };
    if (order == MiddleOrder::AFirst) {
      push(a_family_wave(left, mid.rho, t, params));
      push(contact0_wave(mid, right, t, params));
    } else {
      push(contact0_wave(left, mid, t, params));
      push(a_family_wave(mid, right.rho, t, params));
    }
    if (!valid || !speeds_ordered(waves)) continue;
    std::vector<State> middles;
    if (!waves.empty() && !(mid == left) && !(mid == right)) middles.push_back(mid);
    const Region region = classical_region(waves);
    WavePattern pattern = finish_pattern(region, std::move(waves), std::move(middles));
    if (auto relabeled = relabel_vacuum_plateau(pattern, params)) return relabeled;
    return pattern;
  }
  return std::nullopt;
}

std::optional<WavePattern> try_classical(const State& left, const State& right, double t,
                                         const SystemParams& params) {
  for (MiddleOrder order : {MiddleOrder::AFirst, MiddleOrder::ZeroFirst}) {
    if (auto p = try_classical_order(left, right, order, t, params)) return p;
  }
  return std::nullopt;
}

// Region VI: a-wave to rho_bar, vertical 0-contact across the degeneracy,
// a-wave to the right state. Admissible only when the speeds straddle 0.
std::optional<WavePattern> try_crossing(const State& left, const State& right, double t,
                                        const SystemParams& params) {
  const double I = params.integral(t);
  const double rel_l = left.u_tilde + I;
  const double rel_r = right.u_tilde + I;
  if (rel_l == 0.0 || rel_r == 0.0 || (rel_l < 0.0) == (rel_r < 0.0)) return std::nullopt;
  std::vector<WaveDescriptor> waves;
  bool valid = true;
  const auto push = [&](const MaybeWave& mw) {
    if (!mw.ok) valid = false;
    else if (mw.wave) waves.push_back(*mw.wave);
  };
  const State mid1{params.rho_bar, left.u_tilde};
  const State mid2{params.rho_bar, right.u_tilde};
  push(a_family_wave(left, params.rho_bar, t, params));
  push(contact0_wave(mid1, mid2, t, params));
  push(a_family_wave(mid2, right.rho, t, params));
  if (!valid || waves.empty() || !speeds_ordered(waves)) return std::nullopt;
  std::vector<State> middles;
  if (!(mid1 == left)) middles.push_back(mid1);
  if (!(mid2 == right)) middles.push_back(mid2);
  WavePattern p = finish_pattern(Region::VI, std::move(waves), std::move(middles));
  p.subscript = ' ';
  return p;
}

// Direct delta shock (Region IV) under the scan-equivalent admissibility.
std::optional<WavePattern> try_delta_direct(const State& left, const State& right, double t,
                                            const SystemParams& params) {
  if (delta::scan_cell(left, right, params, t, 1e-3) != delta::CellState::Inside)
    return std::nullopt;
  double speed;
  if (params.a_exp < 0.0) {
    const auto choice = delta::select_admissible_root(left, right, params, t);
    if (choice.status != delta::RootChoice::Status::Unique) return std::nullopt;
    speed = choice.s + params.integral(t);
  } else {
    speed = delta::pos_spawn_speed(left, right, params, t);
  }
  WaveDescriptor d{WaveType::Delta, left, right, speed, speed};
  return finish_pattern(Region::IV, {d}, {});
}

// Rarefaction-prefixed delta: an a-rarefaction from L to a middle state M
// from which the delta is overcompressive, attached at x' = lambda_a(M).
std::optional<WavePattern> try_delta_prefixed(const State& left, const State& right, double t,
                                              const SystemParams& params) {
  if (!(params.a_exp < 0.0)) return std::nullopt;
  const double I = params.integral(t);
  const double rel = left.u_tilde + I;
  if (rel == 0.0) return std::nullopt;
  // Rarefaction side per the a-family admissibility tables.
  bool rightward;
  if (params.a_exp < -1.0) rightward = rel < 0.0;       // a < -1
  else rightward = rel > 0.0;                           // -1 < a < 0
  const double lo = rightward ? left.rho * (1.0 + 1e-9) : std::max(1e-6, left.rho * 1e-6);
  const double hi = rightward ? std::max({50.0, 4.0 * params.rho_bar, 4.0 * right.rho, 4.0 * left.rho})
                              : left.rho * (1.0 - 1e-9);

  const auto attach_gap = [&](double rho_m) -> double {
    const State mid{rho_m, left.u_tilde};
    const auto roots = delta::spawn_speed_roots(mid, right, params, t);
    if (roots.count() == 0) return std::numeric_limits<double>::quiet_NaN();
    const double lam_a = lambda_a(mid, t, params);
    const double lam_0 = lambda0(mid, t, params);
    const Eigenpair er = eigenvalues(right, t, params);
    const double lower = std::max(er.lambda_a, er.lambda_0);
    double best = std::numeric_limits<double>::quiet_NaN();
    for (double X : {roots.s1, roots.s2}) {
      if (!(lower < X) || !(X < lam_0)) continue;  // strict parts of overcompressivity
      const double gap = X - lam_a;
      if (!std::isfinite(best) || std::abs(gap) < std::abs(best)) best = gap;
    }
    return best;
  };

  const int n = 256;
  double prev_rho = 0.0, prev_gap = std::numeric_limits<double>::quiet_NaN();
  double root_rho = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i <= n; ++i) {
    const double rho = lo * std::pow(hi / lo, i / double(n));
    if (std::abs(rho - left.rho) <= kZeroWidthTol) continue;
    const double gap = attach_gap(rho);
    if (std::isfinite(gap) && std::isfinite(prev_gap) && (gap < 0.0) != (prev_gap < 0.0)) {
      const auto g = [&](double r) {
        const double v = attach_gap(r);
        return std::isfinite(v) ? v : 1.0;
      };
      root_rho = bisect(g, prev_rho, rho, prev_gap);
      break;
    }
    prev_rho = rho;
    prev_gap = gap;
  }
  if (!std::isfinite(root_rho)) return std::nullopt;

  const State mid{root_rho, left.u_tilde};
  const MaybeWave raref = a_family_wave(left, root_rho, t, params);
  if (!raref.ok || !raref.wave || raref.wave->type != WaveType::Rarefaction_a) return std::nullopt;
  const double speed = lambda_a(mid, t, params);  // attached: x' = lambda_a(M)
  const Eigenpair er = eigenvalues(right, t, params);
  if (!(std::max(er.lambda_a, er.lambda_0) < speed) || !(speed < lambda0(mid, t, params)))
    return std::nullopt;
  WaveDescriptor d{WaveType::Delta, mid, right, speed, speed};
  std::vector<WaveDescriptor> waves{*raref.wave, d};
  if (!speeds_ordered(waves)) return std::nullopt;
  return finish_pattern(Region::IV, std::move(waves), {mid});
}

// Vacuum recipes. Both side groups must reach rho -> 0 along their curves,
// and the vacuum must open: lambda_0(L) < lambda_0(R).
std::optional<WavePattern> try_vacuum(const State& left, const State& right, double t,
                                      const SystemParams& params) {
  const double I = params.integral(t);
  const double l0_l = lambda0(left, t, params);
  const double l0_r = lambda0(right, t, params);
  if (!(l0_l < l0_r - kOrderTol)) return std::nullopt;

  const double u_vac_left = params.a_exp < 0.0 ? -I : l0_l - I;
  const double u_vac_right = params.a_exp < 0.0 ? -I : l0_r - I;
  const State vac_l{0.0, u_vac_left};
  const State vac_r{0.0, u_vac_right};
  const auto vacuum_wave = [&](double s_lo, double s_hi) {
    return WaveDescriptor{WaveType::Vacuum, vac_l, vac_r, s_lo, s_hi};
  };

  const bool left_reaches_vacuum = left.rho < params.rho_bar - kDegeneracyTol;

  // C0 + V + C0 (both states below rho_bar).
  if (left_reaches_vacuum && right.rho < params.rho_bar - kDegeneracyTol) {
    WaveDescriptor c0_in{WaveType::Contact_0, left, vac_l, l0_l, l0_l};
    WaveDescriptor c0_out{WaveType::Contact_0, vac_r, right, l0_r, l0_r};
    return finish_pattern(Region::V, {c0_in, vacuum_wave(l0_l, l0_r), c0_out},
                          {vac_l, vac_r});
  }

  // C0 + V + (a-wave) + C0 (right state beyond rho_bar): the vacuum exit is
  // a composite moving at lambda_0(R); the interior state shown for it sits
  // on the contact locus through R at a representative density.
  if (left_reaches_vacuum && right.rho > params.rho_bar + kDegeneracyTol) {
    double rho_rep = 2.0 * right.rho;
    double u_rep;
    try {
      u_rep = waves::contact_curve_u(right, rho_rep, t, params);
    } catch (const CriticalDensity&) {
      return std::nullopt;
    }
    const State rep{rho_rep, u_rep};
    WaveDescriptor c0_in{WaveType::Contact_0, left, vac_l, l0_l, l0_l};
    WaveDescriptor a_mid;
    a_mid.left = vac_r;
    a_mid.right = rep;
    a_mid.s_left = a_mid.s_right = l0_r;
    switch (a_regime(params)) {
      case ARegime::BelowMinusOne: a_mid.type = WaveType::Rarefaction_a; break;
      case ARegime::MinusOne: a_mid.type = WaveType::Contact_a; break;
      default: a_mid.type = WaveType::Shock_a; break;
    }
    WaveDescriptor c0_out{WaveType::Contact_0, rep, right, l0_r, l0_r};
    return finish_pattern(Region::V, {c0_in, vacuum_wave(l0_l, l0_r), a_mid, c0_out},
                          {vac_l, vac_r, rep});
  }

  // Ra + V + C0: the a-rarefaction carries the left state into vacuum
  // (positive exponents; the far part of the sliver has no classical root).
  if (params.a_exp > 0.0 && right.rho < params.rho_bar - kDegeneracyTol) {
    const double rel = left.u_tilde + I;
    const double lam_l = lambda_a(left, t, params);
    const double lam_edge = rel;  // lambda_a at rho -> 0 for a > 0
    if (lam_l > lam_edge + kOrderTol) return std::nullopt;
    if (lam_edge > l0_r + kOrderTol) return std::nullopt;
    WaveDescriptor raref{WaveType::Rarefaction_a, left, {0.0, left.u_tilde}, lam_l, lam_edge};
    WaveDescriptor c0_out{WaveType::Contact_0, vac_r, right, l0_r, l0_r};
    return finish_pattern(Region::V,
                          {raref, vacuum_wave(lam_edge, l0_r), c0_out},
                          {{0.0, left.u_tilde}, vac_r});
  }

  return std::nullopt;
}

}  // namespace

std::optional<State> classical_middle_state(const State& left, const State& right,
                                            MiddleOrder order, double t,
                                            const SystemParams& params) {
  if (auto pattern = try_classical_order(left, right, order, t, params)) {
    if (!pattern->middle_states.empty()) return pattern->middle_states.front();
    return right;  // zero-width pattern: middle coincides with an endpoint
  }
  return std::nullopt;
}

WavePattern classify_region(const State& left, const State& right, const SystemParams& params,
                            double t) {
  case_id(params, left, t);  // throws FullDegeneracy where no case applies

  if (std::abs(left.rho - right.rho) <= kZeroWidthTol &&
      std::abs(left.u_tilde - right.u_tilde) <= kZeroWidthTol) {
    WavePattern p;
    p.region = Region::I;
    p.tag = "const";
    return p;
  }
  if (right.rho <= kVacuumFloor) {
    WavePattern p;
    p.diagnostics = "vacuum right state not covered by the region catalog";
    return p;
  }

  std::string diag;
  try {
    if (auto p = try_classical(left, right, t, params)) return *p;
    diag += "classical: no admissible middle state; ";
    if (auto p = try_crossing(left, right, t, params)) return *p;
    diag += "rho_bar crossing: not admissible; ";
    if (auto p = try_delta_direct(left, right, t, params)) return *p;
    if (auto p = try_delta_prefixed(left, right, t, params)) return *p;
    diag += "delta: not overcompressive; ";
    if (auto p = try_vacuum(left, right, t, params)) return *p;
    diag += "vacuum recipes: not applicable";
  } catch (const Error& e) {
    diag += std::string("error: ") + e.what();
  }
  WavePattern p;
  p.diagnostics = diag;
  return p;
}

RegionMap region_map(const State& left, const SystemParams& params, double t,
                     const Window& window, int n) {
  RegionMap map;
  const int nr = std::max(n, 2), nu = std::max(n, 2);
  map.rho.resize(nr);
  map.u.resize(nu);
  for (int i = 0; i < nr; ++i)
    map.rho[i] = window.rho_min + (window.rho_max - window.rho_min) * i / (nr - 1.0);
  for (int j = 0; j < nu; ++j)
    map.u[j] = window.u_min + (window.u_max - window.u_min) * j / (nu - 1.0);
  map.cells.resize(static_cast<std::size_t>(nr) * nu);
  for (int j = 0; j < nu; ++j) {
    for (int i = 0; i < nr; ++i) {
      auto& cell = map.cells[static_cast<std::size_t>(j) * nr + i];
      try {
        const WavePattern p = classify_region(left, {map.rho[i], map.u[j]}, params, t);
        cell.region = p.region;
        cell.label = p.region == Region::Unclassifiable ? "unclassifiable" : p.region_label();
      } catch (const Error&) {
        cell.region = Region::Unclassifiable;
        cell.label = "degenerate";
      }
    }
  }

  // Boundary overlays.
  const double I = params.integral(t);
  Polyline sr_line{"a-family locus", {}};
  sr_line.points.push_back({window.rho_min, left.u_tilde});
  sr_line.points.push_back({window.rho_max, left.u_tilde});
  map.boundaries.push_back(std::move(sr_line));

  Polyline rho_bar_line{"rho_bar", {}};
  rho_bar_line.points.push_back({params.rho_bar, window.u_min});
  rho_bar_line.points.push_back({params.rho_bar, window.u_max});
  map.boundaries.push_back(std::move(rho_bar_line));

  if (std::abs(left.rho - params.rho_bar) > kDegeneracyTol) {
    std::vector<double> grid;
    for (int i = 0; i < 257; ++i)
      grid.push_back(window.rho_min + (window.rho_max - window.rho_min) * i / 256.0);
    for (const auto& branch : waves::contact_branches(left, t, params, grid)) {
      Polyline line{branch.branch == waves::BranchKind::C0 ? "C0"
                    : branch.branch == waves::BranchKind::Mirror ? "C0_m"
                                                                 : "C0_l",
                    {}};
      for (const auto& s : branch.samples) {
        if (s[1] >= window.u_min - 5.0 && s[1] <= window.u_max + 5.0) line.points.push_back(s);
      }
      if (line.points.size() > 1) map.boundaries.push_back(std::move(line));
    }
    Polyline asym{"asymptote", {}};
    const double ua = waves::contact_asymptote_u(left, t, params, true);
    asym.points.push_back({window.rho_min, ua});
    asym.points.push_back({window.rho_max, ua});
    map.boundaries.push_back(std::move(asym));
  }
  Polyline a_line{"A(t)", {}};
  a_line.points.push_back({window.rho_min, -I});
  a_line.points.push_back({window.rho_max, -I});
  map.boundaries.push_back(std::move(a_line));

  // Overcompressive frontier: midpoints between IV and non-IV neighbors.
  Polyline frontier{"delta frontier", {}};
  for (int j = 0; j < nu; ++j) {
    for (int i = 0; i + 1 < nr; ++i) {
      const bool a_in = map.at(i, j).region == Region::IV;
      const bool b_in = map.at(i + 1, j).region == Region::IV;
      if (a_in != b_in)
        frontier.points.push_back({0.5 * (map.rho[i] + map.rho[i + 1]), map.u[j]});
    }
  }
  for (int j = 0; j + 1 < nu; ++j) {
    for (int i = 0; i < nr; ++i) {
      const bool a_in = map.at(i, j).region == Region::IV;
      const bool b_in = map.at(i, j + 1).region == Region::IV;
      if (a_in != b_in) frontier.points.push_back({map.rho[i], 0.5 * (map.u[j] + map.u[j + 1])});
    }
  }
  if (!frontier.points.empty()) map.boundaries.push_back(std::move(frontier));
  return map;
}

}  // namespace crowdflow::classify
