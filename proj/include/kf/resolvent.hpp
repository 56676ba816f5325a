#pragma once

#include <memory>

#include "kf/boundary.hpp"
#include "kf/grid.hpp"
#include "kf/measure.hpp"

namespace kf {

/// Product-form resolvent kernel rho(x,y) = g1(min)·g2(max)/normalizer of
/// (lambda - d/dmu d/dx)^{-1}. g1 is the left boundary solution (cosh-like
/// for Neumann, sinh-like for Dirichlet); g2(y) is the mirrored solution
/// anchored at the right endpoint, already expressed as a function of y.
struct ResolventDensity {
    Measure measure;
    Boundary bc = Boundary::Neumann;
    double lambda = 0.0;
    GridFunction g1, g2;
    double normalizer = 0.0;

    double operator()(double x, double y) const;
};

/// Reusable resolvent application at fixed lambda: the boundary solutions
/// are propagated once over the quadrature mesh; each apply is two
/// cumulative Stieltjes sweeps (the kernel kink at y = x always falls on a
/// mesh point, so the diagonal split is exact).
class ResolventOperator {
public:
    ResolventOperator(const Measure& m, Boundary bc, double lambda, GridPtr grid);

    GridFunction apply(const GridFunction& f) const;
    ResolventDensity density() const;
    const GridPtr& grid() const;
    double lambda() const { return lambda_; }
    Boundary bc() const { return bc_; }

private:
    Boundary bc_;
    double lambda_;
    std::shared_ptr<const QuadratureMesh> mesh_;
    std::vector<double> g1_, g2_;
    double normalizer_ = 0.0;
};

ResolventDensity resolvent_density(const Measure& m, Boundary bc, double lambda,
                                   GridPtr grid = nullptr);

GridFunction apply_resolvent(const Measure& m, Boundary bc, double lambda, const GridFunction& f,
                             GridPtr grid = nullptr);

/// Max residual |lambda·u - (d/dmu d/dx)u - f| over support-interior test
/// points, plus the boundary-condition violation at 0 and 1.
double verify_resolvent(const Measure& m, Boundary bc, double lambda, const GridFunction& f,
                        const GridFunction& u);

/// Explicit sup-norm bound on the density difference of the resolvents of
/// two measures at CDF sup-distance cdf_dist.
double resolvent_error_bound(double lambda, Boundary bc, double cdf_dist);

}  // namespace kf
