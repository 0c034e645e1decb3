#pragma once

#include <string>
#include <vector>

namespace cutfem {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Quick self-checks of quadrature, cut geometry, operators, the Jacobian and
/// the manufactured problem, on the coarsest disc mesh.
std::vector<CheckResult> run_property_checks(int seed);

} // namespace cutfem
