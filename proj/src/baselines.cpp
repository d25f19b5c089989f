#include "stochhyp/baselines.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "stochhyp/errors.hpp"

namespace stochhyp::baselines {

namespace {

// Same exception type, node index in front of the message.
[[noreturn]] void rethrow_at_node(std::exception_ptr error, std::size_t node, double z) {
  const std::string where = "collocation node " + std::to_string(node) + " (z = " + std::to_string(z) + "): ";
  try {
    std::rethrow_exception(error);
  } catch (const ConfigError& e) {
    std::vector<std::string> v;
    for (const auto& s : e.violations()) v.push_back(where + s);
    throw ConfigError(v);
  } catch (const DivergenceError& e) {
    throw DivergenceError(where + e.what(), e.location());
  } catch (const DomainError& e) {
    throw DomainError(where + e.what());
  } catch (const UsageError& e) {
    throw UsageError(where + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(where + e.what());
  }
}

}  // namespace

MomentField aggregate(const gpc::QuadratureRule& rule, const std::vector<std::vector<double>>& samples) {
  if (samples.size() != rule.count()) throw UsageError("aggregate: one sample set per node");
  MomentField out;
  if (samples.empty()) return out;
  const std::size_t n = samples.front().size();
  out.expectation.assign(n, 0.0);
  out.variance.assign(n, 0.0);
  for (std::size_t m = 0; m < rule.count(); ++m) {
    if (samples[m].size() != n) throw UsageError("aggregate: sample sets differ in size");
    const double w = rule.weights[m];
    for (std::size_t i = 0; i < n; ++i) {
      out.expectation[i] += w * samples[m][i];
      out.variance[i] += w * samples[m][i] * samples[m][i];
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.variance[i] -= out.expectation[i] * out.expectation[i];
  return out;
}

CollocationRun collocate(const gpc::QuadratureRule& rule, const NodeSolver& solve, int threads) {
  CollocationRun run;
  run.rule = rule;
  const auto nodes = static_cast<long>(rule.count());
  run.samples.resize(rule.count());
  std::vector<std::exception_ptr> errors(rule.count());

#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
  for (long m = 0; m < nodes; ++m) {
    try {
      run.samples[static_cast<std::size_t>(m)] = solve(rule.nodes[static_cast<std::size_t>(m)]);
    } catch (...) {
      errors[static_cast<std::size_t>(m)] = std::current_exception();
    }
  }
  for (std::size_t m = 0; m < errors.size(); ++m) {
    if (errors[m]) rethrow_at_node(errors[m], m, rule.nodes[m]);
  }
  run.moments = aggregate(rule, run.samples);
  return run;
}

std::vector<double> deterministic_convection(const convection::InterfaceCoefficient& coef,
                                             const convection::ConvectionGrid& grid,
                                             const convection::InitialProfile& u0, int steps, int order,
                                             LimiterMap map, Integrator integrator, double z) {
  const convection::DeterministicConvection solver(coef, grid, z);
  std::vector<double> u(static_cast<std::size_t>(grid.cells()));
  for (int i = 0; i < grid.cells(); ++i) u[static_cast<std::size_t>(i)] = u0(grid.center(i));
  auto step = [&](const std::vector<double>& v) { return solver.step(v, order, map); };
  for (int n = 0; n < steps; ++n) u = convection::integrate(u, integrator, step);
  return u;
}

std::vector<double> deterministic_liouville(const liouville::LiouvilleScheme& scheme,
                                            const liouville::PhaseProfile& u0, int steps,
                                            liouville::Integrator integrator, double z) {
  const liouville::DeterministicLiouville solver(scheme, z);
  auto u = liouville::sample_profile(u0, scheme.grid());
  for (int n = 0; n < steps; ++n) u = solver.advance(u, integrator);
  return u;
}

CollocationRun collocate_convection(const convection::InterfaceCoefficient& coef,
                                    const convection::ConvectionGrid& grid,
                                    const convection::InitialProfile& u0, int steps, int order,
                                    LimiterMap map, Integrator integrator, int points, int threads) {
  return collocate(
      gpc::gauss_rule(points),
      [&](double z) { return deterministic_convection(coef, grid, u0, steps, order, map, integrator, z); },
      threads);
}

CollocationRun collocate_liouville(const liouville::LiouvilleScheme& scheme, const liouville::PhaseProfile& u0,
                                   int steps, liouville::Integrator integrator, int points, int threads) {
  return collocate(
      gpc::gauss_rule(points),
      [&](double z) { return deterministic_liouville(scheme, u0, steps, integrator, z); }, threads);
}

LiouvilleCharacteristics::LiouvilleCharacteristics(liouville::PotentialBarrier barrier, double z,
                                                   liouville::PhaseProfile u0)
    : v_left_(barrier.v_left), v_right_(barrier.v_right), u0_(std::move(u0)) {
  if (barrier.slope_amp * z != 0.0) {
    throw UsageError("characteristic solution needs a piecewise-constant potential");
  }
}

double LiouvilleCharacteristics::value(double x, double v, double t) const {
  // Free flight backwards; only particles heading toward x = 0 in backward time can meet it.
  const bool meets = (x > 0.0 && v > 0.0) || (x < 0.0 && v < 0.0);
  if (!meets || std::abs(v) * t <= std::abs(x)) return u0_(x - v * t, v);
  const double hit = std::abs(x / v);
  const double rest = t - hit;
  const double here = x > 0.0 ? v_right_ : v_left_;
  const double there = x > 0.0 ? v_left_ : v_right_;
  const double disc = v * v + 2.0 * (here - there);
  if (disc > 0.0) {
    const double v_before = std::copysign(std::sqrt(disc), v);
    return u0_(-v_before * rest, v_before);
  }
  // Reflected: before the bounce it moved with -v on the same side.
  return u0_(v * rest, -v);
}

std::vector<double> LiouvilleCharacteristics::sample(const liouville::PhaseSpaceGrid& grid, double t) const {
  std::vector<double> out(static_cast<std::size_t>(grid.nx()) * static_cast<std::size_t>(grid.nv()));
  for (int i = 0; i < grid.nx(); ++i) {
    for (int j = 0; j < grid.nv(); ++j) {
      out[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.nv()) + static_cast<std::size_t>(j)] =
          value(grid.x_center(i), grid.v_center(j), t);
    }
  }
  return out;
}

}  // namespace stochhyp::baselines
