#include "cutfem/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cutfem/errors.hpp"

namespace cutfem {

const std::vector<ConfigField>& config_fields() {
  static const std::vector<ConfigField> fields = {
      {"problem", &RunConfig::problem, "builtin problem: disc-p4, disc-zero, patch-affine"},
      {"p", &RunConfig::p, "exponent of the nonlinearity |u|^{p-2}u"},
      {"gamma_d", &RunConfig::gamma_d, "Nitsche penalty"},
      {"gamma_1", &RunConfig::gamma_1, "ghost penalty"},
      {"base_h", &RunConfig::base_h, "target mesh size of level 0"},
      {"levels", &RunConfig::levels, "number of levels in a convergence study"},
      {"full", &RunConfig::full, "add one more (finest) level"},
      {"volume_degree", &RunConfig::volume_degree, "volume quadrature degree"},
      {"interface_degree", &RunConfig::interface_degree, "interface quadrature degree"},
      {"error_degree", &RunConfig::error_degree, "error quadrature degree"},
      {"newton_tol", &RunConfig::newton_tol, "absolute Newton tolerance"},
      {"newton_max_iter", &RunConfig::newton_max_iter, "Newton iteration cap"},
      {"linear_solver", &RunConfig::linear_solver, "direct or cg"},
      {"linear_tol", &RunConfig::linear_tol, "relative linear solver tolerance"},
      {"local_h", &RunConfig::local_h, "element/face-local h in penalty scalings"},
      {"mesh_norm_diagnostic", &RunConfig::mesh_norm_diagnostic, "also compute the active-domain mesh norm"},
      {"center_x", &RunConfig::center_x, "disc centre x"},
      {"center_y", &RunConfig::center_y, "disc centre y"},
      {"translations", &RunConfig::translations, "repetitions with randomly shifted disc"},
      {"seed", &RunConfig::seed, "random seed"},
      {"output_dir", &RunConfig::output_dir, "directory for output files"},
      {"write_vtk", &RunConfig::write_vtk, "write solution_L.vtk files"},
      {"band_h1_min", &RunConfig::band_h1_min, "lower bound on the mean H1 EOC"},
      {"band_h1_max", &RunConfig::band_h1_max, "upper bound on the mean H1 EOC"},
      {"band_l2_min", &RunConfig::band_l2_min, "lower bound on the mean L2 EOC"},
      {"band_l2_max", &RunConfig::band_l2_max, "upper bound on the mean L2 EOC"},
      {"band_star_min", &RunConfig::band_star_min, "lower bound on the mean star-norm EOC"},
      {"band_star_max", &RunConfig::band_star_max, "upper bound on the mean star-norm EOC"},
  };
  return fields;
}

void RunConfig::validate() const {
  if (problem != "disc-p4" && problem != "disc-zero" && problem != "patch-affine")
    throw ValidationError("unknown problem '" + problem + "'");
  if (!(gamma_d > 0)) throw ValidationError("gamma_d must be positive");
  if (!(gamma_1 >= 0)) throw ValidationError("gamma_1 must be non-negative");
  if (!(p >= 2)) throw ValidationError("p must be at least 2");
  if (!(base_h > 0)) throw ValidationError("base_h must be positive");
  if (levels < 1) throw ValidationError("levels must be at least 1");
  for (int d : {volume_degree, interface_degree, error_degree})
    if (d < 1 || d > 6) throw ValidationError("quadrature degrees must lie in 1..6");
  if (error_degree < 4) throw ValidationError("error_degree must be at least 4");
  if (!(newton_tol > 0)) throw ValidationError("newton_tol must be positive");
  if (newton_max_iter < 0) throw ValidationError("newton_max_iter must be non-negative");
  if (linear_solver != "direct" && linear_solver != "cg")
    throw ValidationError("linear_solver must be 'direct' or 'cg'");
  if (!(linear_tol > 0)) throw ValidationError("linear_tol must be positive");
  if (translations < 0) throw ValidationError("translations must be non-negative");
  if (output_dir.empty()) throw ValidationError("output_dir must not be empty");
}

ProblemParams RunConfig::problem_params(double h) const {
  ProblemParams params;
  params.p = p;
  params.gamma_d = gamma_d;
  params.gamma_1 = gamma_1;
  params.h = h;
  params.local_h = local_h;
  params.quadrature = {volume_degree, interface_degree, error_degree};
  return params;
}

NewtonOptions RunConfig::newton_options() const {
  NewtonOptions o;
  o.tol_abs = newton_tol;
  o.max_iter = newton_max_iter;
  o.linear.tol = linear_tol;
  o.linear.method = linear_solver == "cg" ? LinearMethod::ConjugateGradient : LinearMethod::Direct;
  return o;
}

std::string serialize_config(const RunConfig& config) {
  nlohmann::ordered_json j;
  for (const auto& field : config_fields())
    std::visit([&](auto member) { j[field.name] = config.*member; }, field.member);
  return j.dump(2) + "\n";
}

RunConfig parse_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config: top level must be an object");

  RunConfig config;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const ConfigField* field = nullptr;
    for (const auto& f : config_fields())
      if (it.key() == f.name) field = &f;
    if (field == nullptr) throw ValidationError("config: unknown key '" + it.key() + "'");
    std::visit(
        [&](auto member) {
          using T = std::remove_reference_t<decltype(config.*member)>;
          const auto& v = it.value();
          const bool ok = std::is_same_v<T, std::string> ? v.is_string()
                          : std::is_same_v<T, bool>      ? v.is_boolean()
                          : std::is_same_v<T, int>       ? v.is_number_integer()
                                                         : v.is_number();
          if (!ok) throw ValidationError("config: wrong type for '" + it.key() + "'");
          config.*member = v.get<T>();
        },
        field->member);
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

} // namespace cutfem
