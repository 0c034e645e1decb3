#pragma once

#include "cutfem/quadrature.hpp"
#include "cutfem/space.hpp"
#include "cutfem/types.hpp"

namespace cutfem {

/// Parameters of the discrete problem -Δu + |u|^{p-2}u = f with Nitsche
/// boundary enforcement and ghost penalty stabilisation.
struct ProblemParams {
  double p = 4.0;
  double gamma_d = 10.0;
  double gamma_1 = 0.1;
  double h = 0.0;        ///< global mesh parameter (h_max of the level)
  bool local_h = false;  ///< use element diameter / face length instead of h
  QuadratureOptions quadrature{};

  /// Throws ValidationError unless gamma_d > 0, gamma_1 >= 0, p >= 2, h > 0.
  void validate() const;
};

/// f1(u) = |u|^{p-2} u and its derivative (p-1)|u|^{p-2}; both are taken as
/// the continuous extension at u = 0.
double power_nonlinearity(double u, double p);
double power_nonlinearity_derivative(double u, double p);

/// Volume stiffness over the physical part, both symmetric Nitsche consistency
/// terms and the gamma_d / h penalty mass on the interface.
SparseOperator assemble_ah(const FeSpace& space, const ProblemParams& params);

/// The interface mass matrix ∫_Γ φ_j φ_i (unscaled).
SparseOperator assemble_interface_mass(const FeSpace& space, const ProblemParams& params);

/// Ghost penalty: sum over ghost faces of gamma_1 h ∫_F [n_F·∇u][n_F·∇v].
SparseOperator assemble_ghost_penalty(const FeSpace& space, const ProblemParams& params);

/// ∫_Ω f2 φ_i.
VectorXd assemble_load(const FeSpace& space, const ScalarField& f2, const ProblemParams& params);

/// Nitsche data terms for nonhomogeneous Dirichlet data g:
/// -∫_Γ g (n·∇φ_i) + gamma_d h^{-1} ∫_Γ g φ_i.
VectorXd assemble_nitsche_data(const FeSpace& space, const ScalarField& g, const ProblemParams& params);

/// ∫_Ω |u_h|^{p-2} u_h φ_i.
VectorXd assemble_f1_residual(const FeFunction& u, const ProblemParams& params);

/// ∫_Ω (p-1)|u_h|^{p-2} φ_j φ_i. The sparsity pattern covers every active
/// element with a physical part, independently of u.
SparseOperator assemble_f1_jacobian(const FeFunction& u, const ProblemParams& params);

/// max |A - A^T|.
double symmetry_defect(const SparseOperator& a);

} // namespace cutfem
