#pragma once

#include <vector>

#include "kf/grid.hpp"

namespace kf::detail {

/// Power series in z with generalized-monomial coefficients, evaluated at
/// every mesh point. With alternating=false: even/odd are the hyperbolic
/// pair (cosh-like, sinh-like); with alternating=true the trigonometric
/// pair. d_even and d_odd are their classical first derivatives.
struct SeriesFine {
    std::vector<double> even, odd, d_even, d_odd;
    int order = 0;
    double tail_bound = 0.0;
};

SeriesFine series_on_mesh(const QuadratureMesh& mesh, double z, double tol, bool alternating);

}  // namespace kf::detail
