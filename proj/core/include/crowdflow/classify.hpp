#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crowdflow/delta.hpp"
#include "crowdflow/model.hpp"
#include "crowdflow/waves.hpp"

namespace crowdflow::classify {

enum class Regime { ALessM1, AEqM1, AInM10, APos };
enum class VelocitySide { Below, Above };   // u_tilde(L) vs A(t)
enum class DensitySide { Below, Equal, Above };  // rho(L) vs rho_bar

/// One of the 24 cases: 1-6 for a < -1, 7-12 for a = -1, 13-18 for
/// -1 < a < 0, 19-24 for a > 0; within each block the index advances with
/// the density side and jumps by 3 when u_tilde(L) sits above A(t).
struct CaseId {
  int index = 0;
  Regime regime = Regime::ALessM1;
  VelocitySide velocity_side = VelocitySide::Below;
  DensitySide density_side = DensitySide::Below;
};

CaseId case_id(const SystemParams& params, const State& left, double t);

/// Times in (0, horizon] at which the case flips (A(t) crosses u_tilde(L)).
std::vector<double> case_transition_times(const SystemParams& params, const State& left,
                                          double horizon);

enum class WaveType { Shock_a, Rarefaction_a, Contact_a, Contact_0, Vertical_C0, Delta, Vacuum };

const char* wave_type_name(WaveType type);

/// One wave of a solution pattern. Discontinuities have s_left == s_right;
/// rarefactions span [s_left, s_right]; vacuum segments span the opening fan.
struct WaveDescriptor {
  WaveType type;
  State left;
  State right;
  double s_left = 0.0;
  double s_right = 0.0;
};

enum class Region { I, II, III, IV, V, VI, Unclassifiable };

const char* region_name(Region region);

struct WavePattern {
  Region region = Region::Unclassifiable;
  char subscript = ' ';  // family that departs from the left state: 'a' or '0'
  std::string tag;       // compact sequence tag, e.g. "Sa+C0" or "C0VSaC0"
  std::vector<WaveDescriptor> waves;
  std::vector<State> middle_states;
  std::string diagnostics;

  std::vector<WaveType> sequence() const;
  std::string region_label() const;  // e.g. "I_a", "V_C0VC0", "IV"
};

enum class MiddleOrder { AFirst, ZeroFirst };

/// Densities rho_M of all intersections defining a classical middle state,
/// sorted ascending; empty when no intersection exists on either branch.
std::vector<State> classical_middle_candidates(const State& left, const State& right,
                                               MiddleOrder order, double t,
                                               const SystemParams& params);

/// The middle state of the admissible classical pattern, if one exists.
std::optional<State> classical_middle_state(const State& left, const State& right,
                                            MiddleOrder order, double t,
                                            const SystemParams& params);

/// Construct the Riemann solution pattern. Attempts, in order: classical
/// two-wave (both orders), the rho_bar-crossing three-wave pattern, delta
/// constructions (direct, then rarefaction-prefixed), and the vacuum
/// recipes; returns Unclassifiable with diagnostics when nothing passes.
WavePattern classify_region(const State& left, const State& right, const SystemParams& params,
                            double t);

struct Window {
  double rho_min = 0.25, rho_max = 15.0;
  double u_min = -10.0, u_max = 10.0;
};

struct Polyline {
  std::string label;
  std::vector<std::array<double, 2>> points;  // (rho, u_tilde)
};

struct RegionMap {
  std::vector<double> rho;  // cell centers
  std::vector<double> u;
  struct Cell {
    Region region = Region::Unclassifiable;
    std::string label;
  };
  std::vector<Cell> cells;  // row-major, iu * n_rho + irho
  std::vector<Polyline> boundaries;

  const Cell& at(int irho, int iu) const { return cells[static_cast<std::size_t>(iu) * rho.size() + irho]; }
};

RegionMap region_map(const State& left, const SystemParams& params, double t,
                     const Window& window, int n);

}  // namespace crowdflow::classify
