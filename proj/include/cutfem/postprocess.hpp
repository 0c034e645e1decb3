#pragma once

#include <limits>
#include <string>
#include <vector>

#include "cutfem/assembly.hpp"
#include "cutfem/problem.hpp"
#include "cutfem/space.hpp"

namespace cutfem {

struct ErrorRecord {
  double h = 0;
  double err_l2 = 0;
  double err_h1_semi = 0;
  double err_h1 = 0;        ///< full norm, sqrt(semi^2 + l2^2)
  double err_star = 0;      ///< sqrt(semi^2 + boundary_term^2)
  double boundary_term = 0; ///< sqrt(gamma_d / h ∫_Γ (u - u_h)^2)
  double j_term = std::numeric_limits<double>::quiet_NaN();     ///< j_h(u_h, u_h)
  double err_h_norm = std::numeric_limits<double>::quiet_NaN(); ///< mesh norm over the active domain
};

struct ErrorOptions {
  bool mesh_norm_diagnostic = false;
};

/// Errors of u_h against the exact solution on the discrete domain {phi_h < 0},
/// integrated with the error quadrature degree of `params`.
ErrorRecord error_norms(const ManufacturedProblem& problem, const FeFunction& u_h, const ProblemParams& params,
                        const ErrorOptions& options = {});

/// log2(coarse / fine).
double eoc(double coarse_error, double fine_error);

struct ConvergenceTable {
  std::vector<ErrorRecord> records;
  std::vector<double> eoc_h1; ///< entry 0 is NaN
  std::vector<double> eoc_l2;
  std::vector<double> eoc_star;
  double mean_eoc_h1 = 0;
  double mean_eoc_l2 = 0;
  double mean_eoc_star = 0;
};

/// Per-level and mean EOCs. Throws ValidationError for fewer than two levels
/// or if h does not halve from one level to the next.
ConvergenceTable compute_eoc(std::vector<ErrorRecord> records);

/// Columns h,err_h1,eoc_h1,err_l2,eoc_l2,err_star,eoc_star; one row per level
/// and a final row of means.
std::string convergence_csv(const ConvergenceTable& table);

} // namespace cutfem
