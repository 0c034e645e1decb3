#pragma once

#include <string>

#include "cutfem/space.hpp"
#include "cutfem/types.hpp"

namespace cutfem {

/// Legacy ASCII VTK unstructured grid of the active triangles with the nodal
/// values as point scalars "u" and the cell labels as cell scalars "label"
/// (0 inside, 2 cut).
std::string vtk_legacy(const FeFunction& u, const std::string& title = "cutfem solution");

/// `dof,x,y,value` rows.
std::string nodal_values_csv(const FeFunction& u);

/// `row,col,value` rows of the stored nonzeros.
std::string matrix_coo(const SparseOperator& a);

/// Throws ValidationError if the file cannot be written.
void write_file(const std::string& path, const std::string& contents);

} // namespace cutfem
