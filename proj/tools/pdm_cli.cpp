// pdm_cli: data tables for the deformed-translation infinite well.
//
//   pdm_cli --command spectrum --gamma-sweep -0.5:5:23 --n 1 --n 2 --n 3
//   pdm_cli --command verify
//
// Exit codes: 0 success, 1 invalid input, 2 verification failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "pdm/pdm.hpp"

namespace {

using namespace pdm;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitVerifyFailed = 2;

struct RunConfig {
  std::string command;
  std::vector<double> gamma_tilde{1.0};
  std::optional<double> gamma;
  std::string gamma_sweep;
  std::vector<int> n{1};
  std::size_t grid_points = 2001;
  bool grid_points_set = false;
  double hbar = 1.0;
  double mass = 1.0;
  double length = 1.0;
  std::string format = "csv";
  std::string out;
  std::vector<std::string> checks;
  double dt = 1e-4;
  int steps = 1000;
  std::string op = "hermitian";
  double alpha = -0.25;
  double beta = -0.5;
  double gamma_order = -0.25;

  PhysicalParams params(double gt) const {
    return PhysicalParams::from_gamma_tilde(gt, length, hbar, mass);
  }
};

// ---------------------------------------------------------------- output

using Cell = std::variant<std::monostate, double, long long, std::string>;

std::string format_double(double v) {
  if (!std::isfinite(v)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string csv_cell(const Cell& c) {
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<std::string>(c)) {
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  return {};
}

std::string json_cell(const Cell& c) {
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    return std::isfinite(v) ? format_double(v) : "null";
  }
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<std::string>(c)) return json_string(std::get<std::string>(c));
  return "null";
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // density2d emits its grid as nested arrays in json.
  std::optional<std::vector<double>> axis;
  std::optional<std::vector<std::vector<double>>> matrix;
};

std::string json_double_array(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + json_cell(v[i]);
  return s + "]";
}

std::string config_json(const RunConfig& cfg) {
  std::ostringstream o;
  o << "{\"command\":" << json_string(cfg.command) << ",\"gamma_tilde\":" << json_double_array(cfg.gamma_tilde);
  if (cfg.gamma) o << ",\"gamma\":" << json_cell(*cfg.gamma);
  o << ",\"hbar\":" << json_cell(cfg.hbar) << ",\"mass\":" << json_cell(cfg.mass)
    << ",\"length\":" << json_cell(cfg.length) << ",\"n\":[";
  for (std::size_t i = 0; i < cfg.n.size(); ++i) o << (i ? "," : "") << cfg.n[i];
  o << "],\"grid_points\":" << cfg.grid_points << ",\"format\":" << json_string(cfg.format);
  if (cfg.command == "evolve")
    o << ",\"dt\":" << json_cell(cfg.dt) << ",\"steps\":" << cfg.steps << ",\"operator\":" << json_string(cfg.op);
  if (cfg.command == "expectation") o << ",\"operator\":" << json_string(cfg.op);
  if (cfg.command == "verify") {
    o << ",\"alpha\":" << json_cell(cfg.alpha) << ",\"beta\":" << json_cell(cfg.beta)
      << ",\"gamma_order\":" << json_cell(cfg.gamma_order) << ",\"check\":[";
    for (std::size_t i = 0; i < cfg.checks.size(); ++i) o << (i ? "," : "") << json_string(cfg.checks[i]);
    o << "]";
  }
  o << "}";
  return o.str();
}

std::string render(const Table& t, const RunConfig& cfg) {
  std::string s;
  if (cfg.format == "csv") {
    for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
    s += "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
      s += "\n";
    }
    return s;
  }
  s = "{\"config\":" + config_json(cfg);
  if (t.matrix) {
    s += ",\"axis\":" + json_double_array(*t.axis) + ",\"rows\":[";
    for (std::size_t i = 0; i < t.matrix->size(); ++i) s += (i ? "," : "") + json_double_array((*t.matrix)[i]);
    s += "]";
  } else {
    s += ",\"rows\":[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      s += r ? ",{" : "{";
      for (std::size_t i = 0; i < t.columns.size(); ++i)
        s += (i ? "," : "") + json_string(t.columns[i]) + ":" + json_cell(t.rows[r][i]);
      s += "}";
    }
    s += "]";
  }
  return s + "}\n";
}

Cell num(double v) { return v; }
Cell num(int v) { return static_cast<long long>(v); }
Cell num(std::size_t v) { return static_cast<long long>(v); }

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

int max_level(const RunConfig& cfg) { return *std::max_element(cfg.n.begin(), cfg.n.end()); }

// -------------------------------------------------------------- commands

Table cmd_spectrum(const RunConfig& cfg) {
  Table t;
  t.columns = {"gamma_tilde", "n", "E_analytic", "E_ref3", "E_numeric", "rel_err", "E_over_E0", "rel_err_ref3"};
  const auto k = static_cast<std::size_t>(max_level(cfg));
  for (double gt : cfg.gamma_tilde) {
    const PhysicalParams p = cfg.params(gt);
    const EigenSolution sol = solve_well_refined(p, cfg.grid_points, k);
    const double e0 = std::numbers::pi * std::numbers::pi * p.hbar * p.hbar / (2.0 * p.mass * p.length * p.length);
    for (int n : cfg.n) {
      const double ea = energy(n, p);
      const double er = reference_energy_ref3(n, p);
      const double en = (*sol.richardson_estimate)[n - 1];
      t.rows.push_back({num(gt), num(n), num(ea), num(er), num(en), num(rel_err(en, ea)), num(ea / e0),
                        num(rel_err(en, er))});
    }
  }
  return t;
}

Table cmd_wavefunction(const RunConfig& cfg) {
  Table t;
  t.columns = {"gamma_tilde", "n", "x", "phi_analytic", "phi_numeric", "density_analytic", "density_numeric"};
  const auto k = static_cast<std::size_t>(max_level(cfg));
  for (double gt : cfg.gamma_tilde) {
    const PhysicalParams p = cfg.params(gt);
    const EigenSolution sol = solve_well_xgrid(p, cfg.grid_points, k);
    for (int n : cfg.n) {
      const WaveFunction& s = sol.states[n - 1];
      for (std::size_t i = 0; i < s.grid().size(); ++i) {
        const double x = s.grid().x_at(i);
        const double a = eigenfunction(n, x, p);
        const double v = s.samples()[i].real();
        t.rows.push_back({num(gt), num(n), num(x), num(a), num(v), num(a * a), num(v * v)});
      }
    }
  }
  return t;
}

Table cmd_density2d(const RunConfig& cfg) {
  if (cfg.n.size() > 2) throw ValidationError("density2d takes one or two --n values (n1, n2)");
  if (cfg.gamma_tilde.size() != 1) throw ValidationError("density2d takes a single gamma value");
  const int n1 = cfg.n.front();
  const int n2 = cfg.n.back();
  const std::size_t res = cfg.grid_points_set ? cfg.grid_points : 101;
  const PhysicalParams p = cfg.params(cfg.gamma_tilde.front());
  const Density2D d = density_2d(n1, n2, p, res);
  Table t;
  t.columns = {"x", "y", "density"};
  std::vector<std::vector<double>> m(res, std::vector<double>(res));
  for (std::size_t i = 0; i < res; ++i)
    for (std::size_t j = 0; j < res; ++j) {
      m[i][j] = d.at(i, j);
      if (cfg.format == "csv") t.rows.push_back({num(d.axis[i]), num(d.axis[j]), num(d.at(i, j))});
    }
  if (cfg.format == "json") {
    t.axis = d.axis;
    t.matrix = std::move(m);
  }
  return t;
}

Table cmd_expectation(const RunConfig& cfg) {
  Table t;
  t.columns = {"gamma_tilde", "n", "x_expect_over_L", "x_quadrature_over_L", "p_expect_re", "p_expect_im"};
  const auto variant = cfg.op == "hermitian" ? MomentumVariant::hermitian : MomentumVariant::nonhermitian;
  for (double gt : cfg.gamma_tilde) {
    const PhysicalParams p = cfg.params(gt);
    const Grid g = make_x_grid(p, cfg.grid_points);
    for (int n : cfg.n) {
      const double closed = expectation_x(n, p) / p.length;
      const double quad = expectation_x(sample_eigenfunction(n, p, g)) / p.length;
      const cplx pe = expectation_p_gamma(n, p, cfg.grid_points, variant);
      t.rows.push_back({num(gt), num(n), num(closed), num(quad), num(pe.real()), num(pe.imag())});
    }
  }
  return t;
}

Table cmd_evolve(const RunConfig& cfg) {
  if (cfg.n.size() > 2) throw ValidationError("evolve takes one --n (eigenstate) or two (equal superposition)");
  if (cfg.gamma_tilde.size() != 1) throw ValidationError("evolve takes a single gamma value");
  const PhysicalParams p = cfg.params(cfg.gamma_tilde.front());
  const EigenSolution sol = solve_well_xgrid(p, cfg.grid_points, static_cast<std::size_t>(max_level(cfg)));
  std::vector<cplx> psi(sol.grid.size());
  for (int n : cfg.n)
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] += sol.states[n - 1].samples()[i];
  const OperatorMatrix h =
      cfg.op == "hermitian" ? build_hamiltonian(sol.grid, p) : build_hamiltonian_nonhermitian(sol.grid, p);
  const PropagationRun run = propagate(WaveFunction(sol.grid, psi), h, cfg.dt, cfg.steps, p.hbar);
  Table t;
  t.columns = {"step", "t", "norm", "energy", "x_expect"};
  for (std::size_t k = 0; k < run.norm_history.size(); ++k)
    t.rows.push_back({num(k), num(static_cast<double>(k) * cfg.dt), num(run.norm_history[k]),
                      num(run.energy_history[k]), num(run.position_history[k])});
  if (run.diverged) std::cerr << "warning: norm exceeded " << kDivergenceNorm << "; run stopped early\n";
  return t;
}

Table cmd_convergence(const RunConfig& cfg) {
  Table t;
  t.columns = {"gamma_tilde", "n", "grid_points", "spacing", "E_numeric", "rel_err", "rel_err_ref3",
               "order_ref3", "E_richardson"};
  const auto k = static_cast<std::size_t>(max_level(cfg));
  for (double gt : cfg.gamma_tilde) {
    const PhysicalParams p = cfg.params(gt);
    std::vector<EigenSolution> levels;
    std::size_t n_pts = cfg.grid_points;
    for (int l = 0; l < 3; ++l, n_pts = 2 * n_pts - 1) levels.push_back(solve_well(p, n_pts, k));
    for (int n : cfg.n) {
      const double ea = energy(n, p), er = reference_energy_ref3(n, p);
      for (std::size_t l = 0; l < levels.size(); ++l) {
        const double e = levels[l].energies[n - 1];
        Cell order, rich;
        if (l > 0) {
          const double prev = levels[l - 1].energies[n - 1];
          order = std::log2(std::abs(prev - er) / std::abs(e - er));
          rich = (4.0 * e - prev) / 3.0;
        }
        t.rows.push_back({num(gt), num(n), num(levels[l].grid.size()), num(levels[l].grid.spacing), num(e),
                          num(rel_err(e, ea)), num(rel_err(e, er)), order, rich});
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------- verify

struct CheckResult {
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

// Smooth functions on [0, L] vanishing to fourth order at both walls.
std::vector<std::function<double(double)>> flat_wall_functions(double length) {
  const double pi = std::numbers::pi;
  auto s4 = [=](double x) { return std::pow(std::sin(pi * x / length), 4); };
  return {
      s4,
      [=](double x) { return s4(x) * std::cos(pi * x / length); },
      [=](double x) { return 256.0 * std::pow(x / length * (1.0 - x / length), 4); },
      [=](double x) { return s4(x) * std::exp(x / length); },
      [=](double x) { return std::pow(std::sin(pi * x / length) * std::sin(2.0 * pi * x / length), 2); },
  };
}

CheckResult check_hermiticity(const RunConfig& cfg) {
  double worst = 0.0, offset_err = 0.0;
  for (double gt : cfg.gamma_tilde) {
    const PhysicalParams p = cfg.params(gt);
    const Grid g = make_x_grid(p, cfg.grid_points);
    for (const auto& m : {build_momentum_hermitian(g, p), build_hamiltonian(g, p),
                          build_hamiltonian(make_s_grid(p, cfg.grid_points), p)})
      worst = std::max(worst, hermiticity_defect(m) / m.entries.max_norm());
    offset_err = std::max(offset_err,
                          std::abs(hermiticity_defect(build_momentum_nonhermitian(g, p)) - p.hbar * std::abs(p.gamma)));
  }
  return {worst <= 1e-13 && offset_err <= 1e-12, worst, 1e-13,
          "non-Hermitian defect minus hbar|gamma| = " + format_double(offset_err)};
}

CheckResult check_orthonormality(const RunConfig& cfg) {
  double worst_norm = 0.0, worst_overlap = 0.0;
  for (double gt : cfg.gamma_tilde) {
    const PhysicalParams p = cfg.params(gt);
    const Grid g = make_x_grid(p, cfg.grid_points);
    std::vector<WaveFunction> phi;
    for (int n = 1; n <= 10; ++n) phi.push_back(sample_eigenfunction(n, p, g));
    for (std::size_t a = 0; a < phi.size(); ++a) {
      worst_norm = std::max(worst_norm, std::abs(phi[a].norm_sq() - 1.0));
      for (std::size_t b = 0; b < a; ++b)
        worst_overlap = std::max(worst_overlap, std::abs(inner_product(phi[a], phi[b])));
    }
  }
  return {worst_norm <= 1e-8 && worst_overlap <= 1e-8, std::max(worst_norm, worst_overlap), 1e-8,
          "max |norm - 1| = " + format_double(worst_norm) + ", max overlap = " + format_double(worst_overlap)};
}

CheckResult check_oracle(const RunConfig& cfg) {
  double worst = 0.0, worst_ref3 = 0.0;
  for (double gt : cfg.gamma_tilde) {
    const PhysicalParams p = cfg.params(gt);
    const EigenSolution sol = solve_well_refined(p, cfg.grid_points, 10);
    for (int n = 1; n <= 10; ++n) {
      const double e = (*sol.richardson_estimate)[n - 1];
      worst = std::max(worst, rel_err(e, energy(n, p)));
      worst_ref3 = std::max(worst_ref3, rel_err(e, reference_energy_ref3(n, p)));
    }
  }
  return {worst <= 1e-6, worst, 1e-6, "numeric vs shift-free spectrum: " + format_double(worst_ref3)};
}

CheckResult check_bound(const RunConfig& cfg) {
  double margin = std::numeric_limits<double>::infinity();
  for (double gt : cfg.gamma_tilde) {
    const PhysicalParams p = cfg.params(gt);
    const EigenSolution sol = solve_well(p, cfg.grid_points, 10);
    for (int n = 1; n <= 10; ++n) {
      margin = std::min(margin, energy(n, p) - energy_bound(p));
      margin = std::min(margin, sol.energies[n - 1] - energy_bound(p));
    }
  }
  return {margin > 0.0, margin, 0.0, "min over levels of E - 3 hbar^2 gamma^2 / 8m"};
}

CheckResult check_vonroos(const RunConfig& cfg) {
  double lo = 1e300, hi = -1e300;
  for (double gt : cfg.gamma_tilde) {
    const PhysicalParams p = cfg.params(gt);
    for (const auto& f : flat_wall_functions(p.length)) {
      std::vector<double> res;
      for (std::size_t n_pts : {201u, 401u, 801u}) {
        const Grid g = make_x_grid(p, n_pts);
        std::vector<double> s(g.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = f(g.x_at(i));
        const WaveFunction psi(g, s);
        const WaveFunction a = apply(build_vonroos_kinetic(g, p, cfg.alpha, cfg.beta, cfg.gamma_order), psi);
        const WaveFunction b = apply(build_kinetic(g, p), psi);
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < g.size(); ++i)
          worst = std::max(worst, std::abs(a.samples()[i] - b.samples()[i]));
        res.push_back(worst);
      }
      const double order = std::log2(res[1] / res[2]);
      lo = std::min(lo, order);
      hi = std::max(hi, order);
    }
  }
  return {lo >= 1.8 && hi <= 2.2, lo, 1.8,
          "residual order range [" + format_double(lo) + ", " + format_double(hi) + "], ordering (" +
              format_double(cfg.alpha) + ", " + format_double(cfg.beta) + ", " + format_double(cfg.gamma_order) +
              ")"};
}

CheckResult check_unitarity(const RunConfig& cfg) {
  double herm = 0.0, nonh = std::numeric_limits<double>::infinity();
  for (double gt : cfg.gamma_tilde) {
    const PhysicalParams p = cfg.params(gt);
    const EigenSolution sol = solve_well_xgrid(p, 401, 1);
    herm = std::max(herm, max_norm_drift(propagate(sol.states[0], build_hamiltonian(sol.grid, p), cfg.dt, cfg.steps,
                                                   p.hbar)));
    if (p.gamma != 0.0)
      nonh = std::min(nonh, max_norm_drift(propagate(sol.states[0], build_hamiltonian_nonhermitian(sol.grid, p),
                                                     cfg.dt, cfg.steps, p.hbar)));
  }
  const bool nonh_ok = !std::isfinite(nonh) || nonh > 1e-6;
  return {herm <= 1e-10 && nonh_ok, herm, 1e-10, "non-Hermitian drift = " + format_double(nonh)};
}

CheckResult check_classical(const RunConfig& cfg) {
  const PhysicalParams p = cfg.params(1e-8);
  const double e0 = energy(1, cfg.params(0.0));
  double worst_e = 0.0;
  for (int n = 1; n <= 10; ++n) worst_e = std::max(worst_e, std::abs(energy(n, p) / e0 - n * n) / (n * n));
  const double x_err = std::abs(expectation_x(1, p) / p.length - 0.5);
  return {worst_e <= 1e-6 && x_err <= 1e-8, worst_e, 1e-6, "|<x>/L - 1/2| = " + format_double(x_err)};
}

CheckResult check_shift(const RunConfig& cfg) {
  double worst = 0.0;
  for (double gt : cfg.gamma_tilde) {
    const PhysicalParams p = cfg.params(gt);
    for (int n = 1; n <= 10; ++n) {
      const double d = energy(n, p) - reference_energy_ref3(n, p) - 3.0 * energy_shift_term(p);
      worst = std::max(worst, std::abs(d) / energy(n, p));
    }
  }
  return {worst <= 4.0 * std::numeric_limits<double>::epsilon(), worst, 4.0 * std::numeric_limits<double>::epsilon(),
          "relative to E_n"};
}

CheckResult check_expectation(const RunConfig& cfg) {
  double worst_x = 0.0, worst_p = 0.0;
  for (double gt : cfg.gamma_tilde) {
    const PhysicalParams p = cfg.params(gt);
    const Grid g = make_x_grid(p, std::max<std::size_t>(cfg.grid_points, 20001));
    for (int n : {1, 2, 3, 20}) {
      const double closed = expectation_x(n, p);
      worst_x = std::max(worst_x, rel_err(expectation_x(sample_eigenfunction(n, p, g)), closed));
    }
    for (int n = 1; n <= 20; ++n)
      worst_p = std::max(worst_p, std::abs(expectation_p_gamma(n, p, cfg.grid_points)) * p.length / p.hbar);
  }
  return {worst_x <= 1e-8 && worst_p <= 1e-8, worst_x, 1e-8, "max |<p_gamma>| L / hbar = " + format_double(worst_p)};
}

CheckResult check_density(const RunConfig& cfg) {
  bool ok = true;
  double worst = 0.0;
  for (double gt : cfg.gamma_tilde) {
    const PhysicalParams p = cfg.params(gt);
    const Density2D d = density_2d(1, 1, p, 513);
    const auto [i, j] = d.argmax();
    const double half = 0.5 * p.length;
    if (gt > 0.0) ok = ok && d.axis[i] < half && d.axis[j] < half;
    if (gt < 0.0) ok = ok && d.axis[i] > half && d.axis[j] > half;
    worst = std::max(worst, std::abs(d.integral() - 1.0));
  }
  return {ok && worst <= 1e-8, worst, 1e-8, "argmax quadrant follows the sign of gamma"};
}

const std::vector<std::pair<std::string, CheckResult (*)(const RunConfig&)>>& all_checks() {
  static const std::vector<std::pair<std::string, CheckResult (*)(const RunConfig&)>> checks = {
      {"hermiticity", check_hermiticity}, {"orthonormality", check_orthonormality},
      {"oracle", check_oracle},           {"bound", check_bound},
      {"vonroos", check_vonroos},         {"unitarity", check_unitarity},
      {"classical", check_classical},     {"shift", check_shift},
      {"expectation", check_expectation}, {"density", check_density},
  };
  return checks;
}

Table cmd_verify(const RunConfig& cfg, bool& all_pass) {
  for (const auto& name : cfg.checks) {
    const auto& list = all_checks();
    if (std::none_of(list.begin(), list.end(), [&](const auto& c) { return c.first == name; }))
      throw ValidationError("unknown check '" + name + "'");
  }
  Table t;
  t.columns = {"check", "status", "value", "threshold", "detail"};
  all_pass = true;
  for (const auto& [name, fn] : all_checks()) {
    if (!cfg.checks.empty() && std::find(cfg.checks.begin(), cfg.checks.end(), name) == cfg.checks.end()) continue;
    const CheckResult r = fn(cfg);
    all_pass = all_pass && r.pass;
    t.rows.push_back({name, std::string(r.pass ? "pass" : "fail"), num(r.value), num(r.threshold), r.detail});
  }
  return t;
}

// ----------------------------------------------------------------- setup

std::vector<double> parse_sweep(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw ValidationError("--gamma-sweep expects start:stop:steps");
  double start = 0.0, stop = 0.0;
  long steps = 0;
  try {
    std::size_t used = 0;
    start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("start");
    stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("stop");
    steps = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("steps");
  } catch (const std::logic_error&) {
    throw ValidationError("--gamma-sweep: could not parse '" + spec + "'");
  }
  if (steps < 1) throw ValidationError("--gamma-sweep: steps must be >= 1");
  if (steps == 1) return {start};
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (long i = 0; i < steps; ++i) v[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
  v.back() = stop;
  return v;
}

void validate(RunConfig& cfg) {
  if (!cfg.gamma_sweep.empty()) cfg.gamma_tilde = parse_sweep(cfg.gamma_sweep);
  if (cfg.gamma) cfg.gamma_tilde = {*cfg.gamma * cfg.length};
  if (cfg.grid_points < 65 || cfg.grid_points % 2 == 0)
    throw ValidationError("--grid-points must be odd and >= 65");
  for (int n : cfg.n)
    if (n < 1) throw ValidationError("--n values must be >= 1");
  for (double gt : cfg.gamma_tilde) {
    if (!std::isfinite(gt)) throw ValidationError("gamma must be finite");
    if (!(gt > -1.0 + kMinWallFactor))
      throw ValidationError("gamma_tilde = " + format_double(gt) + " violates gamma L > -1");
    cfg.params(gt).validate();
  }
  if ((cfg.command == "spectrum" || cfg.command == "wavefunction" || cfg.command == "convergence") &&
      static_cast<std::size_t>(max_level(cfg)) > cfg.grid_points / 4)
    throw ValidationError("largest --n exceeds grid_points / 4");
}

int run(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Deformed-translation infinite well: spectra, states, observables and checks"};
  app.option_defaults()->always_capture_default();
  app.add_option("--command", cfg.command, "What to compute")
      ->required()
      ->check(CLI::IsMember({"spectrum", "wavefunction", "density2d", "expectation", "evolve", "verify", "convergence"}));
  auto* gt_opt = app.add_option("--gamma-tilde", cfg.gamma_tilde, "Dimensionless gamma L (repeatable)");
  auto* sweep_opt = app.add_option("--gamma-sweep", cfg.gamma_sweep, "start:stop:steps over gamma L, endpoints included");
  auto* g_opt = app.add_option("--gamma", cfg.gamma, "Absolute gamma in 1/length; overrides --gamma-tilde");
  sweep_opt->excludes(gt_opt);
  g_opt->excludes(gt_opt)->excludes(sweep_opt);
  app.add_option("--n", cfg.n, "Quantum number (repeatable)");
  auto* grid_opt = app.add_option("--grid-points", cfg.grid_points, "Grid points, odd and >= 65 (density2d: resolution)");
  app.add_option("--hbar", cfg.hbar, "Reduced Planck constant")->check(CLI::PositiveNumber);
  app.add_option("--mass", cfg.mass, "Particle mass")->check(CLI::PositiveNumber);
  app.add_option("--length", cfg.length, "Well width L")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "Output file (default stdout)");
  app.add_option("--check", cfg.checks, "Restrict verify to the named check (repeatable)");
  app.add_option("--dt", cfg.dt, "Time step (evolve, verify)")->check(CLI::PositiveNumber);
  app.add_option("--steps", cfg.steps, "Number of time steps (evolve, verify)")->check(CLI::NonNegativeNumber);
  app.add_option("--operator", cfg.op, "Momentum variant for expectation/evolve")
      ->check(CLI::IsMember({"hermitian", "nonhermitian"}));
  app.add_option("--alpha", cfg.alpha, "von Roos exponent alpha (verify vonroos)");
  app.add_option("--beta", cfg.beta, "von Roos exponent beta (verify vonroos)");
  app.add_option("--gamma-order", cfg.gamma_order, "von Roos exponent gamma (verify vonroos)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  cfg.grid_points_set = grid_opt->count() > 0;

  try {
    validate(cfg);
    Table table;
    bool all_pass = true;
    if (cfg.command == "spectrum") table = cmd_spectrum(cfg);
    else if (cfg.command == "wavefunction") table = cmd_wavefunction(cfg);
    else if (cfg.command == "density2d") table = cmd_density2d(cfg);
    else if (cfg.command == "expectation") table = cmd_expectation(cfg);
    else if (cfg.command == "evolve") table = cmd_evolve(cfg);
    else if (cfg.command == "convergence") table = cmd_convergence(cfg);
    else table = cmd_verify(cfg, all_pass);

    const std::string text = render(table, cfg);
    if (cfg.out.empty()) {
      std::cout << text;
      std::cout.flush();
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw ValidationError("cannot open output file '" + cfg.out + "'");
      f << text;
    }
    if (!all_pass) {
      std::cerr << "verification failed\n";
      return kExitVerifyFailed;
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
