#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cutfem/assembly.hpp"
#include "cutfem/solver.hpp"

namespace cutfem {

struct RunConfig {
  std::string problem = "disc-p4";
  double p = 4.0;
  double gamma_d = 10.0;
  double gamma_1 = 0.1;
  double base_h = 0.15;
  int levels = 6;
  bool full = false; ///< adds the finest level (7 in total)
  int volume_degree = 4;
  int interface_degree = 2;
  int error_degree = 4;
  double newton_tol = 1e-10;
  int newton_max_iter = 25;
  std::string linear_solver = "direct"; ///< "direct" or "cg"
  double linear_tol = 1e-10;
  bool local_h = false;
  bool mesh_norm_diagnostic = false;
  double center_x = 0.0;
  double center_y = 0.0;
  int translations = 0; ///< repetitions with a random shift of the disc centre
  int seed = 20201;
  std::string output_dir = ".";
  bool write_vtk = true;
  double band_h1_min = 0.9;
  double band_h1_max = 1.1;
  double band_l2_min = 1.8;
  double band_l2_max = 2.2;
  double band_star_min = 0.9;
  double band_star_max = 1.1;

  bool operator==(const RunConfig&) const = default;

  int level_count() const { return full ? levels + 1 : levels; }

  /// Throws ValidationError on any invalid field.
  void validate() const;

  /// Problem parameters for a mesh of size h.
  ProblemParams problem_params(double h) const;
  NewtonOptions newton_options() const;
};

using ConfigMember = std::variant<std::string RunConfig::*, double RunConfig::*, int RunConfig::*, bool RunConfig::*>;

struct ConfigField {
  const char* name;
  ConfigMember member;
  const char* help;
};

/// Every RunConfig field, in serialisation order.
const std::vector<ConfigField>& config_fields();

/// Flat JSON object with every field.
std::string serialize_config(const RunConfig& config);

/// Missing keys keep their defaults; unknown keys and wrongly typed values
/// throw ValidationError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

} // namespace cutfem
