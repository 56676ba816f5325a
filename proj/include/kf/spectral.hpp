#pragma once

#include <vector>

#include "kf/boundary.hpp"
#include "kf/grid.hpp"
#include "kf/measure.hpp"

namespace kf {

enum class SpectralMethod { Shooting, MatrixOracle };

/// Ascending eigenvalues and mu-orthonormal eigenfunctions of the negative
/// operator -d/dmu d/dx under the given boundary condition. Eigenfunction
/// signs follow a fixed convention (positive at the first grid point where
/// |phi| exceeds 0.1 of its sup-norm) so decompositions are reproducible.
struct SpectralDecomposition {
    Measure measure;
    Boundary bc = Boundary::Neumann;
    SpectralMethod method = SpectralMethod::Shooting;
    std::vector<double> eigenvalues;
    std::vector<GridFunction> eigenfunctions;

    int count() const { return static_cast<int>(eigenvalues.size()); }
};

/// Shooting on the oscillatory boundary solutions: eigenvalues are z^2 at
/// the zeros of the Dirichlet value (resp. Neumann derivative) at x = 1,
/// bracketed by a Sturm-type oscillation count so no root is missed, then
/// refined by bisection. Throws NumericalError on an inconsistent bracket
/// count (near-degenerate spectrum).
SpectralDecomposition eigen_shooting(const Measure& m, Boundary bc, int count, double tol = 1e-10,
                                     GridPtr grid = nullptr);

/// Independent cross-check: the measure is replaced by `atoms` equal point
/// masses at quantile midpoints, turning the operator into a symmetric
/// tridiagonal matrix (a Stieltjes string). This deliberately violates
/// non-atomicity and serves only as a numeric oracle.
SpectralDecomposition eigen_matrix_oracle(const Measure& m, Boundary bc, int atoms, int count);

/// max_{j,k} |<phi_j, phi_k>_mu - delta_jk| by Stieltjes quadrature.
double orthonormality_defect(const SpectralDecomposition& s);

}  // namespace kf
