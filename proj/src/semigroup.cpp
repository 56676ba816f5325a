#include "kf/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kf/errors.hpp"
#include "kf/resolvent.hpp"

namespace kf {

namespace {

constexpr int kMaxEigenpairs = 64;

double term_bound(const SpectralDecomposition& s, int k, double t) {
    double sup = s.eigenfunctions[k].sup_norm();
    return std::exp(-s.eigenvalues[k] * t) * sup * sup;
}

/// Decomposition with enough eigenpairs that the first omitted term of the
/// heat-kernel series at time t is certified below tol.
SpectralDecomposition enough_pairs(const Measure& m, Boundary bc, double t, double tol,
                                   const GridPtr& grid) {
    for (int count = 8; count <= kMaxEigenpairs; count *= 2) {
        auto s = eigen_shooting(m, bc, count, 1e-10, grid);
        for (int k = 1; k < count; ++k) {
            if (term_bound(s, k, t) < tol) {
                s.eigenvalues.resize(k + 1);
                s.eigenfunctions.resize(k + 1);
                return s;
            }
        }
    }
    throw NumericalError("heat expansion needs more than " + std::to_string(kMaxEigenpairs) +
                         " eigenpairs at this time/tolerance; increase t or tol");
}

void check_dirichlet_data(Boundary bc, const GridFunction& f) {
    double slack = 1e-7 * std::max(1.0, f.sup_norm());
    if (bc == Boundary::Dirichlet && (std::abs(f(0.0)) > slack || std::abs(f(1.0)) > slack)) {
        throw ConfigError("Dirichlet initial data must vanish at 0 and 1");
    }
}

}  // namespace

HeatKernel heat_kernel(const Measure& m, Boundary bc, double t, double tol, GridPtr grid) {
    if (!(t > 0.0)) throw ConfigError("heat kernel time must be > 0");
    if (!(tol > 0.0)) throw ConfigError("heat kernel tolerance must be > 0");
    if (!grid) grid = make_grid(m, 257);

    auto s = enough_pairs(m, bc, t, tol, grid);
    int terms = s.count();

    HeatKernel k;
    k.measure = m;
    k.bc = bc;
    k.t = t;
    k.terms = terms;
    k.grid = grid;
    k.truncation_estimate = term_bound(s, terms - 1, t);

    const std::size_t n = grid->size();
    std::vector<std::vector<double>> phi(terms);
    for (int j = 0; j < terms; ++j) {
        std::vector<double> v;
        v.reserve(n);
        for (double x : *grid) v.push_back(s.eigenfunctions[j](x));
        phi[j] = std::move(v);
    }
    k.values.assign(n, std::vector<double>(n, 0.0));
    for (int j = 0; j < terms; ++j) {
        double w = std::exp(-s.eigenvalues[j] * t);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) k.values[a][b] += w * phi[j][a] * phi[j][b];
        }
    }
    return k;
}

GridFunction apply_semigroup(const Measure& m, Boundary bc, double t, const GridFunction& f,
                             SemigroupMethod method, int steps, double tol, GridPtr grid) {
    if (!(t >= 0.0)) throw ConfigError("time must be >= 0");
    check_dirichlet_data(bc, f);
    if (t == 0.0) return f;

    if (method == SemigroupMethod::BackwardEuler) {
        if (steps < 1) throw ConfigError("backward Euler needs steps >= 1");
        double lambda = steps / t;
        if (!grid) grid = union_grid(f.grid(), make_grid(m, 1025));
        ResolventOperator op(m, bc, lambda, grid);
        GridFunction u = f.on_grid(op.grid());
        for (int s = 0; s < steps; ++s) {
            u = op.apply(u);
            for (double& v : u.values()) v *= lambda;
        }
        return u;
    }

    auto s = enough_pairs(m, bc, t, tol, grid);
    QuadratureMesh mesh(m, union_grid(f.grid(), s.eigenfunctions.front().grid()));
    auto fv = mesh.sample(f);

    std::vector<double> u(s.eigenfunctions.front().size(), 0.0);
    for (int k = 0; k < s.count(); ++k) {
        double c = mesh.inner_mu(fv, mesh.sample(s.eigenfunctions[k])) *
                   std::exp(-s.eigenvalues[k] * t);
        const auto& pv = s.eigenfunctions[k].values();
        for (std::size_t i = 0; i < u.size(); ++i) u[i] += c * pv[i];
    }
    return GridFunction(s.eigenfunctions.front().grid(), std::move(u));
}

HeatSolution solve_heat(const Measure& m, Boundary bc, const GridFunction& f,
                        std::vector<double> times, double tol, GridPtr grid) {
    if (times.empty() || times.front() != 0.0) {
        throw ConfigError("time grid must start at 0");
    }
    for (std::size_t j = 0; j + 1 < times.size(); ++j) {
        if (!(times[j] < times[j + 1])) throw ConfigError("time grid must be ascending");
    }
    check_dirichlet_data(bc, f);

    HeatSolution sol;
    sol.measure = m;
    sol.bc = bc;
    sol.times = times;
    sol.initial = f;
    sol.states.push_back(f);
    if (times.size() == 1) return sol;

    // One decomposition covers the whole time grid: the smallest positive
    // step dictates how many eigenpairs are needed.
    double dt_min = times[1];
    for (std::size_t j = 1; j + 1 < times.size(); ++j) {
        dt_min = std::min(dt_min, times[j + 1] - times[j]);
    }
    auto s = enough_pairs(m, bc, dt_min, tol, grid);
    QuadratureMesh mesh(m, union_grid(f.grid(), s.eigenfunctions.front().grid()));
    auto fv = mesh.sample(f);
    std::vector<double> coef(s.count());
    for (int k = 0; k < s.count(); ++k) coef[k] = mesh.inner_mu(fv, mesh.sample(s.eigenfunctions[k]));

    for (std::size_t j = 1; j < times.size(); ++j) {
        std::vector<double> u(s.eigenfunctions.front().size(), 0.0);
        for (int k = 0; k < s.count(); ++k) {
            double c = coef[k] * std::exp(-s.eigenvalues[k] * times[j]);
            const auto& pv = s.eigenfunctions[k].values();
            for (std::size_t i = 0; i < u.size(); ++i) u[i] += c * pv[i];
        }
        sol.states.emplace_back(s.eigenfunctions.front().grid(), std::move(u));
    }
    return sol;
}

}  // namespace kf
