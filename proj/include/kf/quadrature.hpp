#pragma once

#include "kf/grid.hpp"
#include "kf/measure.hpp"

namespace kf {

/// Lebesgue-Stieltjes integral of f over [a,b] against m: midpoint-in-x sums
/// weighted by distribution-function increments on a measure-adapted
/// partition, refined until two successive refinements differ by less than
/// tol. Throws NumericalError when the refinement stalls above tol.
double integrate(const Measure& m, const GridFunction& f, double a, double b, double tol = 1e-10);

}  // namespace kf
