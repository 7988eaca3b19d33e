#include "crowdflow/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace crowdflow::io {

namespace {

std::string trim(std::string_view sv) {
  const auto begin = sv.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  const auto end = sv.find_last_not_of(" \t\r");
  return std::string(sv.substr(begin, end - begin + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find(sep, pos);
    if (next == std::string::npos) {
      parts.push_back(trim(text.substr(pos)));
      break;
    }
    parts.push_back(trim(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return parts;
}

double parse_number(const std::string& text, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": expected a number, got '" + text + "'");
  }
}

long parse_integer(const std::string& text, int line) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": expected an integer, got '" + text + "'");
  }
}

bool parse_bool(const std::string& text, int line) {
  if (text == "true" || text == "1" || text == "on") return true;
  if (text == "false" || text == "0" || text == "off") return false;
  throw ParseError("line " + std::to_string(line) + ": expected a boolean, got '" + text + "'");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* output_kind_name(OutputKind kind) {
  switch (kind) {
    case OutputKind::Profiles: return "profiles";
    case OutputKind::Regions: return "regions";
    case OutputKind::Curves: return "curves";
    case OutputKind::Delta: return "delta";
    case OutputKind::Scan: return "scan";
  }
  return "?";
}

solver::RunSpec Scenario::run_spec() const {
  solver::RunSpec spec;
  spec.params = params;
  spec.left = left;
  spec.right = right;
  spec.n_cells = n_cells;
  spec.dx = dx;
  spec.t_end = t_end;
  spec.cfl = cfl;
  spec.blocks = blocks;
  spec.block_steps = block_steps;
  spec.renormalize = renormalize;
  spec.vacuum_clamp = vacuum_clamp;
  spec.mobility_floor = mobility_floor;
  return spec;
}

void Scenario::validate() const {
  params.validate();
  if (!(left.rho > 0.0)) throw ValidationError("initial: left density must be positive");
  if (!(right.rho > 0.0)) throw ValidationError("initial: right density must be positive");
  if (!(cfl > 0.0) || cfl > 0.5) throw ValidationError("run: cfl must lie in (0, 0.5]");
  if (t_end < 0.0) throw ValidationError("run: t_end must be nonnegative");
  if (!(dx > 0.0)) throw ValidationError("grid: dx must be positive");
  if (n_cells != 0 && n_cells < 3) throw ValidationError("grid: n_cells must be 0 (auto) or >= 3");
  if (blocks < 1 || block_steps < 1) throw ValidationError("run: blocks and block steps must be >= 1");
  if (vacuum_clamp < kVacuumFloor) throw ValidationError("run: vacuum_clamp below the vacuum floor");
  if (mobility_floor < kVacuumFloor) throw ValidationError("run: mobility_floor below the vacuum floor");
  for (double s : scan_times)
    if (s < 0.0) throw ValidationError("output: scan times must be nonnegative");
}

Scenario parse_config(std::string_view text) {
  Scenario scenario;
  scenario.outputs.clear();
  scenario.params.source.pieces.clear();
  bool any_key = false;
  bool outputs_seen = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(line) + ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    any_key = true;

    if (key == "scenario.name") {
      scenario.name = value;
    } else if (key == "system.a_exp") {
      scenario.params.a_exp = parse_number(value, line);
    } else if (key == "system.rho_bar") {
      scenario.params.rho_bar = parse_number(value, line);
    } else if (key == "source.pieces") {
      scenario.params.source.pieces.clear();
      for (const std::string& item : split(value, ',')) {
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos)
          throw ParseError("line " + std::to_string(line) + ": source piece needs 'start:value'");
        scenario.params.source.pieces.push_back(
            {parse_number(trim(item.substr(0, colon)), line),
             parse_number(trim(item.substr(colon + 1)), line)});
      }
    } else if (key == "initial.left_rho") {
      scenario.left.rho = parse_number(value, line);
    } else if (key == "initial.left_u") {
      scenario.left.u_tilde = parse_number(value, line);
    } else if (key == "initial.right_rho") {
      scenario.right.rho = parse_number(value, line);
    } else if (key == "initial.right_u") {
      scenario.right.u_tilde = parse_number(value, line);
    } else if (key == "grid.n_cells") {
      scenario.n_cells = static_cast<int>(parse_integer(value, line));
    } else if (key == "grid.dx") {
      scenario.dx = parse_number(value, line);
    } else if (key == "run.t_end") {
      scenario.t_end = parse_number(value, line);
    } else if (key == "run.cfl") {
      scenario.cfl = parse_number(value, line);
    } else if (key == "run.blocks") {
      scenario.blocks = static_cast<int>(parse_integer(value, line));
    } else if (key == "run.block_steps") {
      scenario.block_steps = static_cast<int>(parse_integer(value, line));
    } else if (key == "run.renormalize") {
      scenario.renormalize = parse_bool(value, line);
    } else if (key == "run.vacuum_clamp") {
      scenario.vacuum_clamp = parse_number(value, line);
    } else if (key == "run.mobility_floor") {
      scenario.mobility_floor = parse_number(value, line);
    } else if (key == "output.kinds") {
      outputs_seen = true;
      for (const std::string& item : split(value, ',')) {
        if (item.empty()) continue;
        if (item == "profiles") scenario.outputs.insert(OutputKind::Profiles);
        else if (item == "regions") scenario.outputs.insert(OutputKind::Regions);
        else if (item == "curves") scenario.outputs.insert(OutputKind::Curves);
        else if (item == "delta") scenario.outputs.insert(OutputKind::Delta);
        else if (item == "scan") scenario.outputs.insert(OutputKind::Scan);
        else throw ParseError("line " + std::to_string(line) + ": unknown output kind '" + item + "'");
      }
    } else if (key == "output.times") {
      scenario.scan_times.clear();
      for (const std::string& item : split(value, ','))
        if (!item.empty()) scenario.scan_times.push_back(parse_number(item, line));
    } else {
      throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  if (!any_key) throw ParseError("empty config");
  if (scenario.params.source.pieces.empty()) scenario.params.source = SourceTerm::zero();
  if (!outputs_seen) scenario.outputs.insert(OutputKind::Profiles);
  scenario.validate();
  return scenario;
}

std::string render_config(const Scenario& s) {
  std::ostringstream out;
  out << "scenario.name = " << s.name << "\n";
  out << "system.a_exp = " << format_double(s.params.a_exp) << "\n";
  out << "system.rho_bar = " << format_double(s.params.rho_bar) << "\n";
  out << "source.pieces = ";
  for (std::size_t i = 0; i < s.params.source.pieces.size(); ++i) {
    if (i) out << ", ";
    out << format_double(s.params.source.pieces[i].start_time) << ":"
        << format_double(s.params.source.pieces[i].value);
  }
  out << "\n";
  out << "initial.left_rho = " << format_double(s.left.rho) << "\n";
  out << "initial.left_u = " << format_double(s.left.u_tilde) << "\n";
  out << "initial.right_rho = " << format_double(s.right.rho) << "\n";
  out << "initial.right_u = " << format_double(s.right.u_tilde) << "\n";
  out << "grid.n_cells = " << s.n_cells << "\n";
  out << "grid.dx = " << format_double(s.dx) << "\n";
  out << "run.t_end = " << format_double(s.t_end) << "\n";
  out << "run.cfl = " << format_double(s.cfl) << "\n";
  out << "run.blocks = " << s.blocks << "\n";
  out << "run.block_steps = " << s.block_steps << "\n";
  out << "run.renormalize = " << (s.renormalize ? "true" : "false") << "\n";
  out << "run.vacuum_clamp = " << format_double(s.vacuum_clamp) << "\n";
  out << "run.mobility_floor = " << format_double(s.mobility_floor) << "\n";
  if (!s.scan_times.empty()) {
    out << "output.times = ";
    for (std::size_t i = 0; i < s.scan_times.size(); ++i) {
      if (i) out << ", ";
      out << format_double(s.scan_times[i]);
    }
    out << "\n";
  }
  out << "output.kinds = ";
  bool first = true;
  for (OutputKind kind : s.outputs) {
    if (!first) out << ", ";
    out << output_kind_name(kind);
    first = false;
  }
  out << "\n";
  return out.str();
}

}  // namespace crowdflow::io
