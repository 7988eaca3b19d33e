#include "crowdflow/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace crowdflow::io {

std::string format_field(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_profiles_csv(std::ostream& out, const std::vector<solver::Snapshot>& snapshots) {
  out << "t,x,xt,rho,u_tilde,u_phys\n";
  for (const auto& snap : snapshots) {
    for (std::size_t i = 0; i < snap.x.size(); ++i) {
      const double xt = snap.t > 0.0 ? snap.x[i] / snap.t : snap.x[i];
      out << format_field(snap.t) << ',' << format_field(snap.x[i]) << ',' << format_field(xt)
          << ',' << format_field(snap.rho[i]) << ',' << format_field(snap.u_tilde[i]) << ','
          << format_field(snap.u_phys[i]) << '\n';
    }
  }
}

std::vector<ProfileRow> parse_profiles_csv(std::istream& in) {
  std::vector<ProfileRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ProfileRow row{};
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &row.t, &row.x, &row.xt, &row.rho,
                    &row.u_tilde, &row.u_phys) != 6)
      throw ParseError("profiles csv: malformed row '" + line + "'");
    rows.push_back(row);
  }
  return rows;
}

void write_region_csv(std::ostream& out, const classify::RegionMap& map) {
  out << "rho,u_tilde,region,subregion\n";
  for (std::size_t j = 0; j < map.u.size(); ++j) {
    for (std::size_t i = 0; i < map.rho.size(); ++i) {
      const auto& cell = map.at(static_cast<int>(i), static_cast<int>(j));
      std::string region = classify::region_name(cell.region);
      std::string sub;
      const auto underscore = cell.label.find('_');
      if (underscore != std::string::npos) sub = cell.label.substr(underscore + 1);
      out << format_field(map.rho[i]) << ',' << format_field(map.u[j]) << ',' << region << ','
          << sub << '\n';
    }
  }
}

void write_scan_csv(std::ostream& out, const delta::ScanGrid& grid, double t) {
  out << "rho,u_tilde,region,subregion\n";
  (void)t;
  for (int j = 0; j < grid.n_u(); ++j) {
    for (int i = 0; i < grid.n_rho(); ++i) {
      const char* region = "none";
      const char* sub = "";
      switch (grid.at(i, j)) {
        case delta::CellState::Inside: region = "IV"; break;
        case delta::CellState::Flagged: sub = "flagged"; break;
        case delta::CellState::MomentumJumpZero: sub = "mjump0"; break;
        case delta::CellState::Outside: break;
      }
      out << format_field(grid.rho[i]) << ',' << format_field(grid.u[j]) << ',' << region << ','
          << sub << '\n';
    }
  }
}

std::vector<RegionRow> parse_region_csv(std::istream& in) {
  std::vector<RegionRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    RegionRow row;
    std::string rho, u;
    if (!std::getline(ls, rho, ',') || !std::getline(ls, u, ',') ||
        !std::getline(ls, row.region, ','))
      throw ParseError("region csv: malformed row '" + line + "'");
    std::getline(ls, row.subregion, ',');
    row.rho = std::stod(rho);
    row.u_tilde = std::stod(u);
    rows.push_back(row);
  }
  return rows;
}

void write_trajectory_csv(std::ostream& out, const delta::DeltaTrajectory& trajectory) {
  out << "t,x,zeta,eta\n";
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    out << format_field(trajectory.times[i]) << ',' << format_field(trajectory.x[i]) << ','
        << format_field(trajectory.zeta[i]) << ',' << format_field(trajectory.eta[i]) << '\n';
  }
}

void write_curves_csv(std::ostream& out, const std::vector<waves::ContactBranch>& branches) {
  out << "branch,rho,u_tilde\n";
  for (const auto& branch : branches) {
    const char* name = "";
    switch (branch.branch) {
      case waves::BranchKind::C0: name = "C0"; break;
      case waves::BranchKind::Mirror: name = "C0_m"; break;
      case waves::BranchKind::Limiting: name = "C0_l"; break;
      case waves::BranchKind::Vertical: name = "C0_vertical"; break;
    }
    for (const auto& s : branch.samples)
      out << name << ',' << format_field(s[0]) << ',' << format_field(s[1]) << '\n';
  }
}

}  // namespace crowdflow::io
