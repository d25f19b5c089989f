#include "stochhyp/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stochhyp/baselines.hpp"
#include "stochhyp/convection.hpp"
#include "stochhyp/errors.hpp"
#include "stochhyp/liouville.hpp"

namespace stochhyp {

namespace fs = std::filesystem;

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

struct Layout {
  std::size_t nx = 0;
  std::size_t nv = 0;  // 0 for convection
  std::vector<double> x;
  std::vector<double> v;

  std::string locate(long cell) const {
    std::ostringstream o;
    o.precision(17);
    if (nv == 0) {
      o << "cell " << cell << " (x = " << x[static_cast<std::size_t>(cell)] << ")";
    } else {
      const auto i = static_cast<std::size_t>(cell) / nv;
      const auto j = static_cast<std::size_t>(cell) % nv;
      o << "cell (" << i << ", " << j << ") (x = " << x[i] << ", v = " << v[j] << ")";
    }
    return o.str();
  }
};

Layout layout_of(const ExperimentConfig& c) {
  Layout l;
  if (c.problem == Problem::convection) {
    l.x = c.convection_grid().centers();
    l.nx = l.x.size();
  } else {
    const auto g = c.phase_grid();
    for (int i = 0; i < g.nx(); ++i) l.x.push_back(g.x_center(i));
    for (int j = 0; j < g.nv(); ++j) l.v.push_back(g.v_center(j));
    l.nx = l.x.size();
    l.nv = l.v.size();
  }
  return l;
}

void check_finite(std::span<const double> raw, std::size_t modes, int step, const Layout& layout) {
  const long cell = first_non_finite_cell(raw, modes);
  if (cell < 0) return;
  throw DivergenceError("non-finite value after step " + std::to_string(step), layout.locate(cell));
}

double cell_measure(const ExperimentConfig& c) { return c.problem == Problem::convection ? c.dx : c.dx * c.dv; }

double mass(std::span<const double> values, double measure) {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc * measure;
}

// Nodal time march at a single z with a divergence check every step.
std::vector<double> march_node(const ExperimentConfig& c, double z, const RunHooks& hooks, const Layout& layout,
                               int* truncations) {
  if (c.problem == Problem::convection) {
    const auto grid = c.convection_grid();
    const auto u0 = convection::profile_from_id(c.init);
    const convection::DeterministicConvection solver(c.coefficient(), grid, z);
    std::vector<double> u(static_cast<std::size_t>(grid.cells()));
    for (int i = 0; i < grid.cells(); ++i) u[static_cast<std::size_t>(i)] = u0(grid.center(i));
    if (hooks.perturb_initial) hooks.perturb_initial(u);
    check_finite(u, 1, 0, layout);
    auto step = [&](const std::vector<double>& v) { return solver.step(v, c.order, c.limiter); };
    for (int n = 1; n <= c.steps(); ++n) {
      u = convection::integrate(u, c.integrator, step);
      check_finite(u, 1, n, layout);
    }
    return u;
  }
  const liouville::LiouvilleScheme scheme(c.phase_grid(), c.barrier(), c.scheme_options());
  const liouville::DeterministicLiouville solver(scheme, z);
  if (truncations) *truncations = solver.context().truncations;
  auto u = liouville::sample_profile(liouville::phase_profile_from_id(c.init), scheme.grid());
  if (hooks.perturb_initial) hooks.perturb_initial(u);
  check_finite(u, 1, 0, layout);
  for (int n = 1; n <= c.steps(); ++n) {
    u = solver.advance(u, c.integrator);
    check_finite(u, 1, n, layout);
  }
  return u;
}

void run_gpc(const ExperimentConfig& c, const RunHooks& hooks, const Layout& layout, RunResult& r) {
  const gpc::OrthonormalBasis basis(c.K);
  const auto rule = gpc::gauss_rule(c.quadrature_points());
  r.modes = basis.size();
  r.nodes = rule.nodes;
  if (c.problem == Problem::convection) {
    const auto grid = c.convection_grid();
    const auto coef = c.coefficient();
    auto field = convection::project_initial(convection::profile_from_id(c.init), grid, r.modes);
    if (hooks.perturb_initial) hooks.perturb_initial(field.raw());
    check_finite(field.raw(), r.modes, 0, layout);
    r.initial_mass = mass(moment_field(field).expectation, c.dx);
    const auto lambdas = convection::build_lambda_matrices(coef, grid, basis, rule);
    const gpc::NodalTable table(basis, rule);
    auto step = [&](const GpcField1D& f) {
      return c.order == 1 ? convection::step_first_order(f, lambdas, grid, c.threads)
                          : convection::step_second_order(f, coef, lambdas, grid, table, c.limiter, c.threads);
    };
    for (int n = 1; n <= r.steps; ++n) {
      field = convection::integrate(field, c.integrator, step);
      check_finite(field.raw(), r.modes, n, layout);
    }
    r.moments = moment_field(field);
    r.coeffs.assign(field.raw().begin(), field.raw().end());
    if (c.oracle) {
      const convection::AnalyticConvectionSolution exact(coef, convection::profile_from_id(c.init));
      r.errors = metrics::convection_error(field, exact, grid, c.T);
    }
    return;
  }
  const liouville::LiouvilleScheme scheme(c.phase_grid(), c.barrier(), c.scheme_options());
  const liouville::GalerkinLiouville solver(scheme, c.K, rule);
  r.truncation_events = solver.truncation_events();
  auto field = liouville::project_initial(liouville::phase_profile_from_id(c.init), scheme.grid(), r.modes);
  if (hooks.perturb_initial) hooks.perturb_initial(field.raw());
  check_finite(field.raw(), r.modes, 0, layout);
  r.initial_mass = mass(moment_field(field).expectation, cell_measure(c));
  for (int n = 1; n <= r.steps; ++n) {
    field = solver.advance(field, c.integrator, c.threads);
    check_finite(field.raw(), r.modes, n, layout);
  }
  r.moments = moment_field(field);
  r.coeffs.assign(field.raw().begin(), field.raw().end());
}

void run_nodal(const ExperimentConfig& c, const RunHooks& hooks, const Layout& layout, RunResult& r) {
  gpc::QuadratureRule rule = c.mode == SolverMode::deterministic ? gpc::point_rule(c.z)
                                                                  : gpc::gauss_rule(c.quadrature_points());
  std::vector<int> truncations(rule.count(), 0);
  std::vector<double> initial;
  auto solve = [&](double z) {
    std::size_t m = 0;
    while (rule.nodes[m] != z) ++m;
    return march_node(c, z, hooks, layout, &truncations[m]);
  };
  const int threads = c.mode == SolverMode::collocation ? c.threads : 1;
  auto run = baselines::collocate(rule, solve, threads);
  for (int t : truncations) r.truncation_events += t;
  r.nodes = rule.nodes;
  r.samples = std::move(run.samples);
  r.moments = std::move(run.moments);

  // Initial mass of the (deterministic) initial data.
  if (c.problem == Problem::convection) {
    const auto u0 = convection::profile_from_id(c.init);
    for (double x : layout.x) initial.push_back(u0(x));
  } else {
    initial = liouville::sample_profile(liouville::phase_profile_from_id(c.init), c.phase_grid());
  }
  r.initial_mass = mass(initial, cell_measure(c));

  if (!c.oracle) return;
  if (c.problem == Problem::convection) {
    const auto grid = c.convection_grid();
    const convection::AnalyticConvectionSolution exact(c.coefficient(), convection::profile_from_id(c.init));
    r.errors = c.mode == SolverMode::deterministic
                   ? metrics::convection_error_at(r.samples.front(), c.z, exact, grid, c.T)
                   : metrics::convection_error_nodal(r.samples, rule, exact, grid, c.T);
  } else if (c.mode == SolverMode::deterministic && c.slope_amp * c.z == 0.0) {
    const baselines::LiouvilleCharacteristics exact(c.barrier(), c.z, liouville::phase_profile_from_id(c.init));
    const auto reference = exact.sample(c.phase_grid(), c.T);
    metrics::ErrorReport e;
    e.l1 = metrics::l1_distance(r.samples.front(), reference, cell_measure(c));
    e.h_norm = e.l1;
    e.l1_expectation = e.l1;
    r.errors = e;
  }
}

void write_summary(const fs::path& dir, const std::vector<std::pair<std::string, std::string>>& entries) {
  std::ofstream out(dir / "summary.txt");
  for (const auto& [k, v] : entries) out << k << "=" << v << "\n";
}

std::string coordinate_header(const RunResult& r) { return r.v.empty() ? "x" : "x,v"; }

void write_coordinates(std::ostream& out, const RunResult& r, std::size_t cell) {
  if (r.v.empty()) {
    out << format_number(r.x[cell]);
  } else {
    out << format_number(r.x[cell / r.v.size()]) << "," << format_number(r.v[cell % r.v.size()]);
  }
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config, const RunHooks& hooks) {
  const auto violations = validate(config);
  if (!violations.empty()) throw ConfigError(violations);

  const auto start = std::chrono::steady_clock::now();
  RunResult r;
  r.config = config;
  r.steps = config.steps();
  const Layout layout = layout_of(config);
  r.x = layout.x;
  r.v = layout.v;

  if (config.mode == SolverMode::gpc_sg) {
    run_gpc(config, hooks, layout, r);
  } else {
    run_nodal(config, hooks, layout, r);
  }
  if (r.errors) {
    r.errors->max_order = config.mode == SolverMode::gpc_sg ? config.K : 0;
    r.errors->dx = config.dx;
    r.errors->dt = config.dt;
    r.errors->final_time = config.T;
    r.errors->order = config.order;
  }
  r.final_mass = mass(r.moments.expectation, cell_measure(config));
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void write_outputs(const RunResult& r, const fs::path& dir) {
  fs::create_directories(dir);
  const std::size_t cells = r.moments.size();
  {
    std::ofstream out(dir / "moments.csv");
    out << coordinate_header(r) << ",expectation,variance\n";
    for (std::size_t c = 0; c < cells; ++c) {
      write_coordinates(out, r, c);
      out << "," << format_number(r.moments.expectation[c]) << "," << format_number(r.moments.variance[c]) << "\n";
    }
  }
  if (!r.coeffs.empty()) {
    std::ofstream out(dir / "coeffs.csv");
    out << coordinate_header(r);
    for (std::size_t k = 0; k < r.modes; ++k) out << ",c" << k;
    out << "\n";
    for (std::size_t c = 0; c < cells; ++c) {
      write_coordinates(out, r, c);
      for (std::size_t k = 0; k < r.modes; ++k) out << "," << format_number(r.coeffs[c * r.modes + k]);
      out << "\n";
    }
  }
  if (!r.samples.empty()) {
    std::ofstream out(dir / "samples.csv");
    out << coordinate_header(r);
    for (std::size_t m = 0; m < r.samples.size(); ++m) out << ",s" << m;
    out << "\n";
    for (std::size_t c = 0; c < cells; ++c) {
      write_coordinates(out, r, c);
      for (const auto& s : r.samples) out << "," << format_number(s[c]);
      out << "\n";
    }
  }
  if (r.errors) {
    const auto& e = *r.errors;
    std::ofstream out(dir / "errors.csv");
    out << "K,order,dx,dt,T,l1,h_norm,l1_expectation,l1_variance\n"
        << e.max_order << "," << e.order << "," << format_number(e.dx) << "," << format_number(e.dt) << ","
        << format_number(e.final_time) << "," << format_number(e.l1) << "," << format_number(e.h_norm) << ","
        << format_number(e.l1_expectation) << "," << format_number(e.l1_variance) << "\n";
  }

  std::string nodes;
  for (double z : r.nodes) nodes += (nodes.empty() ? "" : " ") + format_number(z);
  const auto& c = r.config;
  write_summary(dir, {{"status", "ok"},
                      {"preset", c.preset},
                      {"problem", std::string(to_string(c.problem))},
                      {"mode", std::string(to_string(c.mode))},
                      {"order", std::to_string(c.order)},
                      {"K", std::to_string(c.K)},
                      {"quadrature_nodes", nodes},
                      {"steps", std::to_string(r.steps)},
                      {"dx", format_number(c.dx)},
                      {"dt", format_number(c.dt)},
                      {"T", format_number(c.T)},
                      {"truncation_events", std::to_string(r.truncation_events)},
                      {"initial_mass", format_number(r.initial_mass)},
                      {"final_mass", format_number(r.final_mass)},
                      {"wall_seconds", format_number(r.wall_seconds)}});
}

int run_to_directory(const ExperimentConfig& config, const fs::path& dir, const RunHooks& hooks) {
  try {
    write_outputs(run_experiment(config, hooks), dir);
    return 0;
  } catch (const ConfigError& e) {
    fs::create_directories(dir);
    std::vector<std::pair<std::string, std::string>> entries{{"status", "configuration_error"}};
    for (const auto& v : e.violations()) entries.emplace_back("violation", v);
    write_summary(dir, entries);
    return 2;
  } catch (const DivergenceError& e) {
    fs::create_directories(dir);
    write_summary(dir, {{"status", "diverged"}, {"message", e.what()}, {"non_finite_cell", e.location()}});
    return 3;
  }
}

}  // namespace stochhyp
