#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "crowdflow/classify.hpp"
#include "crowdflow/delta.hpp"
#include "crowdflow/solver.hpp"
#include "crowdflow/waves.hpp"

namespace crowdflow::io {

/// Profile rows: t, x, xt, rho, u_tilde, u_phys (xt = x/t, or x at t = 0).
void write_profiles_csv(std::ostream& out, const std::vector<solver::Snapshot>& snapshots);

struct ProfileRow {
  double t, x, xt, rho, u_tilde, u_phys;
};
std::vector<ProfileRow> parse_profiles_csv(std::istream& in);

/// Region grid rows: rho, u_tilde, region, subregion.
void write_region_csv(std::ostream& out, const classify::RegionMap& map);

/// Scan grids reuse the region schema: region is "IV" inside the
/// overcompressive set and "none" outside; the subregion column carries the
/// diagnostic (flagged / mjump0).
void write_scan_csv(std::ostream& out, const delta::ScanGrid& grid, double t);

struct RegionRow {
  double rho, u_tilde;
  std::string region, subregion;
};
std::vector<RegionRow> parse_region_csv(std::istream& in);

/// Trajectory rows: t, x, zeta, eta.
void write_trajectory_csv(std::ostream& out, const delta::DeltaTrajectory& trajectory);

/// Wave-curve rows: branch, rho, u_tilde.
void write_curves_csv(std::ostream& out, const std::vector<waves::ContactBranch>& branches);

std::string format_field(double v);  // 17 significant digits

}  // namespace crowdflow::io
