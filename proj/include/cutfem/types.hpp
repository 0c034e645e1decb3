#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace cutfem {

template <typename Scalar> using Point2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar> using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Vec2 = Point2<double>;
using VectorXd = Vector<double>;

/// Assembled global operator. Column-major CSC, duplicates summed at build time.
using SparseOperator = Eigen::SparseMatrix<double>;

} // namespace cutfem
