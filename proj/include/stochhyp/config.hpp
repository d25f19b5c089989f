#pragma once

// Experiment description. Text format: one key=value per line, `#` starts a
// comment, `[grid]`, `[random]` and `[output]` open sections (keys may also be
// written as grid.dx = ... at top level). `preset = name` loads a named
// experiment first; every later key overrides it.

#include <string>
#include <string_view>
#include <vector>

#include "stochhyp/bap_limiter.hpp"
#include "stochhyp/convection.hpp"
#include "stochhyp/liouville.hpp"

namespace stochhyp {

enum class Problem { convection, liouville };
enum class SolverMode { gpc_sg, collocation, deterministic };

struct ExperimentConfig {
  std::string preset;
  Problem problem = Problem::convection;
  int order = 1;
  int K = 0;
  /// Quadrature nodes: Galerkin right-hand side (Liouville, order-2 convection)
  /// or collocation points. 0 selects 2K+2 for gpc_sg.
  int quadrature = 0;
  SolverMode mode = SolverMode::gpc_sg;
  double z = 0.0;
  double T = 0.0;
  std::string init;
  LimiterMap limiter = LimiterMap::arctan;
  liouville::Integrator integrator = liouville::Integrator::euler;
  int threads = 1;

  // [grid]
  double a = -2.0;
  double b = 6.0;
  double dx = 0.0;
  double dt = 0.0;
  double x_extent = 2.0;
  double v_extent = 2.0;
  double dv = 0.0;

  // [random]
  double c_minus = 1.0;
  double c_plus = 2.0;
  double sigma = 0.3;
  convection::Transmission transmission = convection::Transmission::conserve_flux;
  double v_left = 0.2;
  double v_right = 0.0;
  double slope_amp = 0.1;
  double alpha_lf = 0.0;
  liouville::VFluxForm vflux = liouville::VFluxForm::corrected;

  // [output]
  std::string output_dir = "out";
  bool oracle = true;

  bool operator==(const ExperimentConfig&) const = default;

  int steps() const;
  int quadrature_points() const;
  convection::InterfaceCoefficient coefficient() const;
  convection::ConvectionGrid convection_grid() const;
  liouville::PhaseSpaceGrid phase_grid() const;
  liouville::PotentialBarrier barrier() const;
  liouville::SchemeOptions scheme_options() const;
};

/// Parses and validates. Throws ConfigError listing every violation.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Semantic checks (CFL, T/dt, known ids); returns all violations.
std::vector<std::string> validate(const ExperimentConfig& config);

/// Text form accepted by parse_config; numbers keep 17 significant digits.
std::string render(const ExperimentConfig& config);

std::vector<std::string> preset_names();
/// Throws ConfigError on an unknown name.
ExperimentConfig preset(const std::string& name);

std::string_view to_string(Problem p);
std::string_view to_string(SolverMode m);

}  // namespace stochhyp
