// Command line driver: single solves, convergence studies and the built-in
// property checks.
//
//   cutfem solve --config run.json --level 2 --gamma_d 10
//   cutfem convergence --config run.json --output_dir out
//   cutfem check

#include <cstdio>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cutfem/checks.hpp"
#include "cutfem/config.hpp"
#include "cutfem/driver.hpp"
#include "cutfem/errors.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitBands = 4;

struct ConfigOptions {
  std::string config_path;
  cutfem::RunConfig overrides;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON configuration file");
    for (const auto& field : cutfem::config_fields()) {
      std::visit([&](auto member) {
        options[field.name] = app->add_option(std::string("--") + field.name, overrides.*member, field.help);
      }, field.member);
    }
  }

  cutfem::RunConfig resolve() const {
    cutfem::RunConfig config = config_path.empty() ? cutfem::RunConfig{} : cutfem::load_config(config_path);
    for (const auto& field : cutfem::config_fields()) {
      if (options.at(field.name)->count() == 0) continue;
      std::visit([&](auto member) { config.*member = overrides.*member; }, field.member);
    }
    config.validate();
    return config;
  }
};

void print_record(const cutfem::LevelResult& r) {
  std::printf("level %d: h=%.6e dofs=%d newton=%d err_h1=%.6e err_l2=%.6e err_star=%.6e\n", r.level,
              r.errors.h, r.n_dofs, r.newton.iterations, r.errors.err_h1, r.errors.err_l2, r.errors.err_star);
}

int run_solve(const ConfigOptions& opts, int level) {
  const auto config = opts.resolve();
  if (config.translations == 0) {
    print_record(cutfem::run_single(config, level));
    return 0;
  }
  const double cell = cutfem::cell_size(config, level);
  for (const auto& offset : cutfem::translation_offsets(config.translations, config.seed, cell)) {
    const cutfem::Vec2 center = cutfem::Vec2(config.center_x, config.center_y) + offset;
    const auto run = cutfem::solve_level(config, level, center);
    if (!run.result.newton.converged) throw cutfem::SolverError("translated run did not converge");
    std::printf("center (%+.6f, %+.6f) ", center.x(), center.y());
    print_record(run.result);
  }
  return 0;
}

int run_study(const ConfigOptions& opts) {
  const auto config = opts.resolve();
  bool pass = true;
  auto report_table = [&](const cutfem::ConvergenceReport& report) {
    for (const auto& l : report.levels) print_record(l);
    std::printf("mean EOC: h1 %.4f  l2 %.4f  star %.4f  -> %s\n", report.table.mean_eoc_h1,
                report.table.mean_eoc_l2, report.table.mean_eoc_star, report.bands_pass ? "PASS" : "FAIL");
    pass = pass && report.bands_pass;
  };
  report_table(cutfem::run_convergence(config));
  if (config.translations > 0) {
    const double cell = cutfem::cell_size(config, 0);
    const auto offsets = cutfem::translation_offsets(config.translations, config.seed, cell);
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      auto shifted = config;
      shifted.center_x += offsets[k].x();
      shifted.center_y += offsets[k].y();
      std::printf("translation %zu: center (%+.6f, %+.6f)\n", k, shifted.center_x, shifted.center_y);
      report_table(cutfem::run_convergence(shifted, "_t" + std::to_string(k)));
    }
  }
  return pass ? 0 : kExitBands;
}

int run_check(int seed) {
  const auto results = cutfem::run_property_checks(seed);
  bool pass = true;
  for (const auto& r : results) {
    std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    pass = pass && r.pass;
  }
  return pass ? 0 : kExitBands;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut finite element solver for -Δu + |u|^{p-2}u = f with Nitsche boundary conditions"};
  app.require_subcommand(1);

  ConfigOptions solve_opts;
  int level = 0;
  auto* solve = app.add_subcommand("solve", "solve one mesh level");
  solve_opts.attach(solve);
  solve->add_option("--level", level, "mesh level (h = base cell / 2^level)")->check(CLI::NonNegativeNumber);

  ConfigOptions study_opts;
  auto* study = app.add_subcommand("convergence", "run the convergence study and write table.csv");
  study_opts.attach(study);

  int check_seed = 7;
  auto* check = app.add_subcommand("check", "run the built-in property checks");
  check->add_option("--seed", check_seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*solve) return run_solve(solve_opts, level);
    if (*study) return run_study(study_opts);
    if (*check) return run_check(check_seed);
  } catch (const cutfem::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const cutfem::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const cutfem::GeometryError& e) {
    std::cerr << "geometry failure: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}
