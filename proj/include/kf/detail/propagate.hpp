#pragma once

#include <vector>

#include "kf/grid.hpp"

namespace kf::detail {

/// Solution samples of g'' = coeff * g (second derivative taken d/dmu d/dx)
/// at every mesh point, with the classical derivative dg alongside.
struct ShootState {
    std::vector<double> g, dg;
};

/// Cell-by-cell drift-kick-drift propagation: within each mesh cell the mass
/// acts as a single kick at the center, drifts are exact straight lines.
/// Exact on mass-free cells, second order in the cell width elsewhere, and
/// free of the catastrophic magnitude growth of the power series for large
/// |coeff|. Forward starts from (g0, dg0) at x = 0; backward from x = 1.
ShootState propagate_forward(const QuadratureMesh& mesh, double coeff, double g0, double dg0);
ShootState propagate_backward(const QuadratureMesh& mesh, double coeff, double g1, double dg1);

}  // namespace kf::detail
