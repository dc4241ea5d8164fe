#include "dicke/run_config.hpp"

#include <charconv>
#include <sstream>

#include "dicke/csv.hpp"
#include "dicke/errors.hpp"

namespace dicke {

namespace {

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("GridSpec: not a number: '" + text + "'");
  }
  if (used != text.size())
    throw DomainError("GridSpec: trailing characters in '" + text + "'");
  return v;
}

}  // namespace

GridSpec GridSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ':')) parts.push_back(token);

  if (parts.size() == 1) return fixed(parse_real(parts[0]));
  if (parts.size() != 3)
    throw DomainError("GridSpec: expected 'value' or 'lo:hi:points', got '" +
                      text + "'");
  GridSpec spec;
  spec.lo = parse_real(parts[0]);
  spec.hi = parse_real(parts[1]);
  spec.points = static_cast<int>(parse_real(parts[2]));
  if (spec.points < 2)
    throw DomainError("GridSpec: a grid needs at least 2 points");
  if (!(spec.hi > spec.lo))
    throw DomainError("GridSpec: grid bounds must increase");
  return spec;
}

std::vector<double> GridSpec::values() const {
  if (points == 1) return {lo};
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i)
    v[i] = lo + (hi - lo) * i / (points - 1);
  return v;
}

std::string GridSpec::str() const {
  if (points == 1) return format_number(lo);
  return format_number(lo) + ":" + format_number(hi) + ":" +
         std::to_string(points);
}

std::string command_name(Command command) {
  switch (command) {
    case Command::sectors:
      return "sectors";
    case Command::sweep:
      return "sweep";
    case Command::evolve:
      return "evolve";
    case Command::leakage:
      return "leakage";
    case Command::balance:
      return "balance";
  }
  return "?";
}

void RunConfig::validate() const {
  if (n_qubits < 1)
    throw ValidationError("config: n must be at least 1");
  if (eta < 0.0 || eta > 1.0)
    throw ValidationError("config: eta must lie in [0, 1]");
  if (gamma_c < 0.0) throw ValidationError("config: gamma-c must be >= 0");
  if (gamma_r.empty())
    throw ValidationError("config: at least one gamma-r value is required");
  for (const double r : gamma_r)
    if (r < 0.0) throw ValidationError("config: gamma-r must be >= 0");
  if (t_points < 0) throw ValidationError("config: t-points must be >= 0");
  if (t_max < 0.0) throw ValidationError("config: t-max must be >= 0");
  if (samples < 0) throw ValidationError("config: samples must be >= 0");
  if (tol < 0.0) throw ValidationError("config: tol must be >= 0");
  for (const GridSpec* g : {&alpha_c, &alpha_l, &q}) {
    if (g->lo < 0.0 || g->hi > 1.0)
      throw ValidationError(
          "config: alpha-c / alpha-l / q values must lie in [0, 1]");
  }

  const bool family = gamma_r.size() > 1;
  switch (command) {
    case Command::sectors:
      break;
    case Command::sweep: {
      const int active = (alpha_c.is_grid() ? 1 : 0) +
                         (alpha_l.is_grid() ? 1 : 0) + (q.is_grid() ? 1 : 0);
      if (active > 2)
        throw ValidationError("sweep: at most two axes may be grids");
      if (family)
        throw ValidationError("sweep: a single gamma-r value is required");
      if (eta < 1.0 && gamma_r_single() > 0.0 && n_qubits > 12)
        throw ValidationError(
            "sweep: the mixed-noise backend is capped at n = 12");
      if (eta == 1.0 && n_qubits > 64)
        throw ValidationError("sweep: n is capped at 64");
      break;
    }
    case Command::evolve:
      if (alpha_c.is_grid() || alpha_l.is_grid() || q.is_grid())
        throw ValidationError(
            "evolve: one parameter set per run (grids belong to sweep)");
      if (gamma_c <= 0.0)
        throw ValidationError("evolve: gamma-c must be positive (time axis)");
      if (n_qubits > (eta < 1.0 ? 12 : 20))
        throw ValidationError("evolve: n is capped at 12 (20 when eta = 1)");
      break;
    case Command::leakage:
      if (alpha_c.is_grid() || alpha_l.is_grid() || q.is_grid())
        throw ValidationError("leakage: grids are not supported");
      if (family)
        throw ValidationError("leakage: a single gamma-r value is required");
      if (gamma_c <= 0.0)
        throw ValidationError("leakage: gamma-c must be positive (time axis)");
      if (n_qubits > 10)
        throw ValidationError("leakage: dense evaluation capped at n = 10");
      break;
    case Command::balance:
      if (!seed_set)
        throw ValidationError("balance: --seed is required (reproducibility)");
      if (family)
        throw ValidationError("balance: a single gamma-r value is required");
      if (n_qubits > 6)
        throw ValidationError("balance: capped at n = 6");
      if (alpha_l.is_grid())
        throw ValidationError("balance: alpha-l plays no role at eta = 1");
      break;
  }
}

std::string RunConfig::echo() const {
  std::ostringstream out;
  out << "command = " << command_name(command) << '\n'
      << "n = " << n_qubits << '\n'
      << "eta = " << format_number(eta) << '\n'
      << "gamma_c = " << format_number(gamma_c) << '\n';
  out << "gamma_r = ";
  for (std::size_t i = 0; i < gamma_r.size(); ++i)
    out << (i ? " " : "") << format_number(gamma_r[i]);
  out << '\n';
  out << "alpha_c = " << alpha_c.str() << '\n'
      << "alpha_l = " << alpha_l.str() << '\n'
      << "q = " << q.str() << '\n'
      << "t_max = " << format_number(t_max) << '\n'
      << "t_points = " << t_points << '\n';
  if (seed_set) out << "seed = " << seed << '\n';
  out << "samples = " << samples << '\n'
      << "out = " << out_dir.string() << '\n'
      << "render = " << (render ? "true" : "false") << '\n'
      << "tol = " << format_number(tol) << '\n';
  return out.str();
}

}  // namespace dicke
