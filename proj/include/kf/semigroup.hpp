#pragma once

#include <vector>

#include "kf/boundary.hpp"
#include "kf/grid.hpp"
#include "kf/measure.hpp"
#include "kf/spectral.hpp"

namespace kf {

/// Heat kernel samples p_t(x,y) on grid x grid, truncated once the next
/// eigen-term bound e^{-lambda*t}·(sup|phi|)^2 drops below the tolerance.
struct HeatKernel {
    Measure measure;
    Boundary bc = Boundary::Neumann;
    double t = 0.0;
    int terms = 0;
    GridPtr grid;
    std::vector<std::vector<double>> values;  // values[i][j] = p_t(x_i, x_j)
    double truncation_estimate = 0.0;

    double at(std::size_t i, std::size_t j) const { return values[i][j]; }
};

HeatKernel heat_kernel(const Measure& m, Boundary bc, double t, double tol = 1e-8,
                       GridPtr grid = nullptr);

enum class SemigroupMethod { Eigen, BackwardEuler };

/// T_t f by eigen-expansion, or by the rational approximation
/// ((steps/t)·R_{steps/t})^steps built from repeated resolvent applications.
/// Dirichlet initial data must vanish at 0 and 1 (validated, not projected).
GridFunction apply_semigroup(const Measure& m, Boundary bc, double t, const GridFunction& f,
                             SemigroupMethod method = SemigroupMethod::Eigen, int steps = 32,
                             double tol = 1e-8, GridPtr grid = nullptr);

struct HeatSolution {
    Measure measure;
    Boundary bc = Boundary::Neumann;
    std::vector<double> times;
    std::vector<GridFunction> states;
    GridFunction initial;
};

/// Heat equation solution u(t) = T_t f on an ascending time grid starting at
/// 0; states after the first are eigen-expansions sharing one decomposition.
HeatSolution solve_heat(const Measure& m, Boundary bc, const GridFunction& f,
                        std::vector<double> times, double tol = 1e-8, GridPtr grid = nullptr);

}  // namespace kf
