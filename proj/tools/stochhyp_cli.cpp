// stochhyp: run, sweep, list and check experiments.
//
//   stochhyp run <config> [--out DIR]
//   stochhyp sweep <config> --k 2..20 --ref 30 [--out DIR]
//   stochhyp sweep <config> --dx 0.01,0.005,0.0025 [--out DIR]
//   stochhyp presets
//   stochhyp check <config>
//
// STOCH_HYP_THREADS overrides the config's threads.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stochhyp/config.hpp"
#include "stochhyp/errors.hpp"
#include "stochhyp/experiment.hpp"
#include "stochhyp/sweeps.hpp"

namespace {

using namespace stochhyp;

constexpr int kConfigExit = 2;
constexpr int kDivergenceExit = 3;

ExperimentConfig load(const std::string& path) {
  ExperimentConfig c = load_config(path);
  if (const char* env = std::getenv("STOCH_HYP_THREADS")) {
    try {
      c.threads = std::stoi(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("STOCH_HYP_THREADS is not an integer: ") + env);
    }
    if (c.threads < 1) throw ConfigError("STOCH_HYP_THREADS must be at least 1");
  }
  return c;
}

// "2..20", "2..20:2" or "2,4,8".
std::vector<int> parse_orders(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto colon = text.find(':');
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2));
    const int stride = colon == std::string::npos ? 1 : std::stoi(text.substr(colon + 1));
    if (stride < 1 || hi < lo) throw ConfigError("bad order range '" + text + "'");
    for (int k = lo; k <= hi; k += stride) out.push_back(k);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

void report(const ConfigError& e) {
  std::cerr << "configuration error:\n";
  for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic Galerkin solvers for hyperbolic problems with random discontinuous coefficients"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run one experiment and write its CSV files");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory (default: output.dir)");

  std::string k_spec;
  std::string dx_spec;
  int reference = -1;
  auto* sweep = app.add_subcommand("sweep", "Convergence study over gPC order or mesh size");
  sweep->add_option("config", config_path, "Config file")->required();
  auto* k_opt = sweep->add_option("--k", k_spec, "Orders: lo..hi[:stride] or a comma list");
  auto* dx_opt = sweep->add_option("--dx", dx_spec, "Comma-separated mesh sizes");
  sweep->add_option("--ref", reference, "Reference order for --k (default: largest order)");
  sweep->add_option("--out", out_dir, "Output directory (default: output.dir)");
  k_opt->excludes(dx_opt);
  dx_opt->excludes(k_opt);

  auto* presets = app.add_subcommand("presets", "List named experiments");

  auto* check = app.add_subcommand("check", "Validate a config and print its expanded form");
  check->add_option("config", config_path, "Config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (presets->parsed()) {
      for (const auto& name : preset_names()) std::cout << name << "\n";
      return 0;
    }
    const ExperimentConfig config = load(config_path);
    const std::string dir = out_dir.empty() ? config.output_dir : out_dir;

    if (check->parsed()) {
      std::cout << render(config);
      return 0;
    }
    if (run->parsed()) {
      const int code = run_to_directory(config, dir);
      if (code == kConfigExit) std::cerr << "configuration error; see " << dir << "/summary.txt\n";
      if (code == kDivergenceExit) std::cerr << "diverged; see " << dir << "/summary.txt\n";
      return code;
    }
    if (k_spec.empty() && dx_spec.empty()) throw ConfigError("sweep needs --k or --dx");
    if (!k_spec.empty()) {
      const auto orders = parse_orders(k_spec);
      const int ref = reference >= 0 ? reference : *std::max_element(orders.begin(), orders.end());
      write_sweep(gpc_error_sweep(config, orders, ref), dir);
    } else {
      write_sweep(mesh_error_sweep(config, parse_list(dx_spec)), dir);
    }
    return 0;
  } catch (const ConfigError& e) {
    report(e);
    return kConfigExit;
  } catch (const DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << " at " << e.location() << "\n";
    return kDivergenceExit;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
