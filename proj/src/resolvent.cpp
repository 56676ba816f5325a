#include "kf/resolvent.hpp"

#include <algorithm>
#include <cmath>

#include "kf/calculus.hpp"
#include "kf/detail/propagate.hpp"
#include "kf/errors.hpp"

namespace kf {

namespace {

GridPtr default_grid(const Measure& m, const GridPtr& grid) {
    return grid ? grid : make_grid(m, 1025);
}

}  // namespace

double ResolventDensity::operator()(double x, double y) const {
    double s = std::min(x, y), t = std::max(x, y);
    return g1(s) * g2(t) / normalizer;
}

ResolventOperator::ResolventOperator(const Measure& m, Boundary bc, double lambda, GridPtr grid)
    : bc_(bc), lambda_(lambda) {
    if (!(lambda > 0.0)) throw ConfigError("resolvent parameter lambda must be > 0");
    mesh_ = std::make_shared<QuadratureMesh>(m, default_grid(m, grid));

    // Left and right boundary solutions of g'' = lambda·g (d/dmu d/dx sense).
    double z = std::sqrt(lambda);
    detail::ShootState fwd, bwd;
    if (bc == Boundary::Neumann) {
        fwd = detail::propagate_forward(*mesh_, lambda, 1.0, 0.0);
        bwd = detail::propagate_backward(*mesh_, lambda, 1.0, 0.0);
        normalizer_ = fwd.dg.back();
    } else {
        fwd = detail::propagate_forward(*mesh_, lambda, 0.0, z);
        bwd = detail::propagate_backward(*mesh_, lambda, 0.0, -z);
        normalizer_ = z * fwd.g.back();
    }
    g1_ = std::move(fwd.g);
    g2_ = std::move(bwd.g);

    if (!(normalizer_ >= lambda * (1.0 - 1e-9))) {
        throw InvariantViolation("resolvent normalizer fell below lambda");
    }
}

const GridPtr& ResolventOperator::grid() const { return mesh_->coarse(); }

ResolventDensity ResolventOperator::density() const {
    ResolventDensity d;
    d.measure = mesh_->measure();
    d.bc = bc_;
    d.lambda = lambda_;
    d.g1 = mesh_->restrict(g1_);
    d.g2 = mesh_->restrict(g2_);
    d.normalizer = normalizer_;
    return d;
}

GridFunction ResolventOperator::apply(const GridFunction& f) const {
    const auto& mass = mesh_->cell_mass();
    const std::size_t n = mesh_->points().size();
    auto fv = mesh_->sample(f);

    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = g1_[i] * fv[i];
        b[i] = g2_[i] * fv[i];
    }
    // Head sum of g1·f dF and tail sum of g2·f dF; the tail is accumulated
    // from the right so no large-value cancellation occurs when lambda is big
    // (backward Euler uses lambda = steps/t).
    std::vector<double> head(n), tail(n);
    head[0] = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) head[i + 1] = head[i] + 0.5 * (a[i] + a[i + 1]) * mass[i];
    tail[n - 1] = 0.0;
    for (std::size_t i = n - 1; i-- > 0;) tail[i] = tail[i + 1] + 0.5 * (b[i] + b[i + 1]) * mass[i];

    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = (g2_[i] * head[i] + g1_[i] * tail[i]) / normalizer_;
    }
    return mesh_->restrict(u);
}

ResolventDensity resolvent_density(const Measure& m, Boundary bc, double lambda, GridPtr grid) {
    return ResolventOperator(m, bc, lambda, std::move(grid)).density();
}

GridFunction apply_resolvent(const Measure& m, Boundary bc, double lambda, const GridFunction& f,
                             GridPtr grid) {
    if (!grid) grid = union_grid(f.grid(), make_grid(m, 1025));
    return ResolventOperator(m, bc, lambda, std::move(grid)).apply(f);
}

double verify_resolvent(const Measure& m, Boundary bc, double lambda, const GridFunction& f,
                        const GridFunction& u) {
    double h = std::clamp(2.0 / static_cast<double>(u.size() - 1), 1e-4, 0.02);
    auto op = apply_krein_feller(m, u, h);
    double res = 0.0;
    for (std::size_t i = 0; i < op.x.size(); ++i) {
        double x = op.x[i];
        res = std::max(res, std::abs(lambda * u(x) - op.value[i] - f(x)));
    }
    if (bc == Boundary::Neumann) {
        res = std::max(res, std::abs(u(h) - u(0.0)) / h);
        res = std::max(res, std::abs(u(1.0) - u(1.0 - h)) / h);
    } else {
        res = std::max(res, std::abs(u(0.0)));
        res = std::max(res, std::abs(u(1.0)));
    }
    return res;
}

double resolvent_error_bound(double lambda, Boundary bc, double cdf_dist) {
    if (!(lambda > 0.0)) throw ConfigError("resolvent parameter lambda must be > 0");
    if (!(cdf_dist >= 0.0)) throw ConfigError("cdf distance must be >= 0");
    double e = std::exp(lambda);
    if (bc == Boundary::Neumann) {
        return (1.0 / lambda + 2.0 * e + 4.0) * e * e * cdf_dist;
    }
    return (2.0 * e + 4.0) * lambda * e * e * cdf_dist;
}

}  // namespace kf
