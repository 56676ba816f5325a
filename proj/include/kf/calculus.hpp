#pragma once

#include <vector>

#include "kf/grid.hpp"
#include "kf/measure.hpp"

namespace kf {

/// Generalized monomials p_0..p_K, q_0..q_K on a shared grid. The p family
/// integrates against the measure first (odd orders), the q family against
/// Lebesgue measure first; both reduce to x^k/k! when the measure is
/// Lebesgue.
struct MonomialTable {
    Measure measure;
    GridPtr grid;
    int max_order = 0;
    std::vector<std::vector<double>> p;
    std::vector<std::vector<double>> q;
};

MonomialTable monomial_table(const Measure& m, int max_order, GridPtr grid);

/// Smallest K such that the series tail beyond order K is certified below
/// tol (numeric tail summation of z^{2k}/k!).
int truncation_order(double z, double tol);

/// Generalized hyperbolic pair for one value of z, with classical first
/// derivatives, truncated so the certified tail is below the requested
/// tolerance.
struct HyperbolicFunctions {
    Measure measure;
    double z = 0.0;
    int order = 0;
    double tail_bound = 0.0;
    GridFunction cosh_z, sinh_z, dcosh_z, dsinh_z;
};

HyperbolicFunctions hyperbolic(const Measure& m, double z, GridPtr grid, double tol = 1e-12);
HyperbolicFunctions hyperbolic(const QuadratureMesh& mesh, double z, double tol = 1e-12);

/// Alternating-sign analogue (generalized sine/cosine); solves the
/// eigenvalue equation with -z^2 in place of z^2. The normalization follows
/// sin'(0) = z.
struct TrigFunctions {
    Measure measure;
    double z = 0.0;
    int order = 0;
    double tail_bound = 0.0;
    GridFunction cos_z, sin_z, dcos_z, dsin_z;
};

TrigFunctions trig(const Measure& m, double z, GridPtr grid, double tol = 1e-12);
TrigFunctions trig(const QuadratureMesh& mesh, double z, double tol = 1e-12);

/// Numerical second difference quotient d/dmu d/dx of f at grid points in
/// the interior of the support. Points inside support gaps, too close to the
/// domain boundary, or with near-zero local mass are omitted.
struct OperatorSamples {
    std::vector<double> x;
    std::vector<double> value;
};

OperatorSamples apply_krein_feller(const Measure& m, const GridFunction& f, double h = 1e-3);

}  // namespace kf
