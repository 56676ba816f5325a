#include "kf/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "kf/detail/propagate.hpp"
#include "kf/errors.hpp"

namespace kf {

namespace {

int sign_changes(const std::vector<double>& v) {
    int changes = 0;
    int prev = 0;
    for (double x : v) {
        int s = (x > 0.0) - (x < 0.0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

struct Shooter {
    const QuadratureMesh& mesh;
    Boundary bc;

    detail::ShootState shoot(double z) const {
        double coeff = -z * z;
        if (bc == Boundary::Neumann) return detail::propagate_forward(mesh, coeff, 1.0, 0.0);
        return detail::propagate_forward(mesh, coeff, 0.0, 1.0);
    }
    // Boundary target whose zeros in z are the eigenvalue square roots.
    double target(const detail::ShootState& s) const {
        return bc == Boundary::Neumann ? s.dg.back() : s.g.back();
    }
    // Sturm-type oscillation count: number of eigenvalues strictly below z^2.
    int osc(const detail::ShootState& s) const {
        return sign_changes(bc == Boundary::Neumann ? s.dg : s.g);
    }
    int osc(double z) const { return osc(shoot(z)); }
};

void fix_sign(std::vector<double>& coarse_values) {
    double m = 0.0;
    for (double v : coarse_values) m = std::max(m, std::abs(v));
    for (double v : coarse_values) {
        if (std::abs(v) > 0.1 * m) {
            if (v < 0.0) {
                for (double& w : coarse_values) w = -w;
            }
            return;
        }
    }
}

// Gaussian elimination with partial pivoting for a tridiagonal system;
// sub/diag/super are copied, one extra superdiagonal of fill-in appears.
std::vector<double> tridiag_solve(std::vector<double> a, std::vector<double> d,
                                  std::vector<double> c, std::vector<double> b) {
    const std::size_t n = d.size();
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) < std::abs(a[i + 1])) {
            std::swap(d[i], a[i + 1]);
            std::swap(c[i], d[i + 1]);
            double old_e = e[i];
            e[i] = (i + 2 < n) ? c[i + 1] : 0.0;
            if (i + 2 < n) c[i + 1] = old_e;
            std::swap(b[i], b[i + 1]);
        }
        // A vanishing pivot means the shift hit an eigenvalue exactly; a tiny
        // pivot steers inverse iteration instead of failing it.
        if (d[i] == 0.0) d[i] = 1e-300;
        double m = a[i + 1] / d[i];
        d[i + 1] -= m * c[i];
        if (i + 2 < n) c[i + 1] -= m * e[i];
        b[i + 1] -= m * b[i];
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        if (i + 1 < n) s -= c[i] * x[i + 1];
        if (i + 2 < n) s -= e[i] * x[i + 2];
        if (d[i] == 0.0) d[i] = 1e-300;
        x[i] = s / d[i];
    }
    return x;
}

}  // namespace

SpectralDecomposition eigen_shooting(const Measure& m, Boundary bc, int count, double tol,
                                     GridPtr grid) {
    if (count < 1) throw ConfigError("eigenpair count must be >= 1");
    if (!(tol > 0.0)) throw ConfigError("shooting tolerance must be > 0");
    QuadratureMesh mesh(m, grid ? grid : make_grid(m, 1025));
    Shooter sh{mesh, bc};

    SpectralDecomposition out;
    out.measure = m;
    out.bc = bc;
    out.method = SpectralMethod::Shooting;

    if (bc == Boundary::Neumann) {
        out.eigenvalues.push_back(0.0);
        out.eigenfunctions.emplace_back(mesh.coarse(),
                                        std::vector<double>(mesh.coarse()->size(), 1.0));
    }
    int needed = count - static_cast<int>(out.eigenvalues.size());

    double z_max = M_PI * (needed + 1);
    for (int tries = 0; needed > 0 && sh.osc(z_max) < needed; ++tries) {
        if (tries > 200) throw NumericalError("oscillation count never reached eigenpair target");
        z_max *= 1.5;
    }

    double prev_root = 1e-9;
    for (int j = 1; j <= needed; ++j) {
        double a = prev_root, b = z_max;
        if (sh.osc(a) != j - 1) {
            throw NumericalError("oscillation count inconsistent with located roots");
        }
        // Shrink [a,b] until it contains exactly the j-th oscillation jump.
        while (sh.osc(b) != j) {
            double mid = 0.5 * (a + b);
            if (!(mid > a && mid < b)) {
                throw NumericalError("eigenvalue bracket degenerated; spectrum too clustered");
            }
            (sh.osc(mid) >= j ? b : a) = mid;
        }
        double wa = sh.target(sh.shoot(a));
        double wb = sh.target(sh.shoot(b));
        if (wa == 0.0) wa = -wb;  // a sits on a root boundary; treat as opposite side
        if (!(wa * wb < 0.0)) {
            throw NumericalError("shooting target does not change sign across bracket");
        }
        for (int it = 0; it < 200 && b - a > tol * std::max(1.0, a); ++it) {
            double mid = 0.5 * (a + b);
            double wm = sh.target(sh.shoot(mid));
            if (wm == 0.0) {
                a = b = mid;
                break;
            }
            if (wa * wm < 0.0) {
                b = mid;
            } else {
                a = mid;
                wa = wm;
            }
        }
        double z = 0.5 * (a + b);
        prev_root = b;

        auto state = sh.shoot(z);
        double nrm = std::sqrt(mesh.inner_mu(state.g, state.g));
        if (!(nrm > 0.0)) throw NumericalError("eigenfunction has vanishing mu-norm");
        for (double& v : state.g) v /= nrm;
        auto phi = mesh.restrict(state.g);
        fix_sign(phi.values());
        out.eigenvalues.push_back(z * z);
        out.eigenfunctions.push_back(std::move(phi));
    }
    return out;
}

SpectralDecomposition eigen_matrix_oracle(const Measure& m, Boundary bc, int atoms, int count) {
    if (count < 1) throw ConfigError("eigenpair count must be >= 1");
    if (atoms < 10 * count) throw ConfigError("matrix oracle needs atoms >= 10*count");
    const int M = atoms;

    std::vector<double> x(M);
    for (int j = 0; j < M; ++j) {
        x[j] = m.quantile((j + 0.5) / M);
        if (j > 0 && x[j] <= x[j - 1]) x[j] = x[j - 1] + 1e-12;
    }

    // Stieltjes string: -(d/dmu d/dx) on atoms of weight 1/M becomes M*T with
    // T symmetric tridiagonal in the chain couplings 1/(x_{j+1}-x_j).
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(M);
    Eigen::VectorXd sub = Eigen::VectorXd::Zero(M - 1);
    for (int j = 0; j + 1 < M; ++j) {
        double c = 1.0 / (x[j + 1] - x[j]);
        sub[j] = -c;
        diag[j] += c;
        diag[j + 1] += c;
    }
    if (bc == Boundary::Dirichlet) {
        diag[0] += 1.0 / x[0];
        diag[M - 1] += 1.0 / (1.0 - x[M - 1]);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("tridiagonal eigensolver failed");

    SpectralDecomposition out;
    out.measure = m;
    out.bc = bc;
    out.method = SpectralMethod::MatrixOracle;

    std::vector<double> grid_pts;
    grid_pts.push_back(0.0);
    grid_pts.insert(grid_pts.end(), x.begin(), x.end());
    grid_pts.push_back(1.0);
    auto grid = std::make_shared<const std::vector<double>>(std::move(grid_pts));

    std::vector<double> a(M), d(M), c(M);
    for (int j = 0; j < M; ++j) {
        a[j] = (j > 0) ? sub[j - 1] : 0.0;
        c[j] = (j + 1 < M) ? sub[j] : 0.0;
    }

    for (int k = 0; k < count; ++k) {
        double ev = es.eigenvalues()[k];
        out.eigenvalues.push_back(M * ev);

        // Inverse iteration at a slightly shifted eigenvalue.
        double shift = ev + std::max(std::abs(ev), 1e-8) * 1e-9;
        for (int j = 0; j < M; ++j) d[j] = diag[j] - shift;
        std::vector<double> v(M);
        for (int j = 0; j < M; ++j) v[j] = 1.0 + 1e-3 * std::sin(1.7 * (k + 1) * (j + 1));
        for (int it = 0; it < 4; ++it) {
            v = tridiag_solve(a, d, c, v);
            double mx = 0.0;
            for (double w : v) mx = std::max(mx, std::abs(w));
            if (!(mx > 0.0)) throw NumericalError("inverse iteration collapsed");
            for (double& w : v) w /= mx;
        }
        double nrm2 = 0.0;
        for (double w : v) nrm2 += w * w;
        double scale = std::sqrt(static_cast<double>(M) / nrm2);  // unit mu-norm

        std::vector<double> vals(M + 2);
        for (int j = 0; j < M; ++j) vals[j + 1] = v[j] * scale;
        if (bc == Boundary::Neumann) {
            vals[0] = vals[1];
            vals[M + 1] = vals[M];
        } else {
            vals[0] = 0.0;
            vals[M + 1] = 0.0;
        }
        fix_sign(vals);
        out.eigenfunctions.emplace_back(grid, std::move(vals));
    }
    return out;
}

double orthonormality_defect(const SpectralDecomposition& s) {
    if (s.eigenfunctions.empty()) return 0.0;
    GridPtr g = s.eigenfunctions.front().grid();
    for (const auto& phi : s.eigenfunctions) g = union_grid(g, phi.grid());
    QuadratureMesh mesh(s.measure, g);
    std::vector<std::vector<double>> fine;
    fine.reserve(s.eigenfunctions.size());
    for (const auto& phi : s.eigenfunctions) fine.push_back(mesh.sample(phi));

    double defect = 0.0;
    for (std::size_t j = 0; j < fine.size(); ++j) {
        for (std::size_t k = j; k < fine.size(); ++k) {
            double ip = mesh.inner_mu(fine[j], fine[k]);
            defect = std::max(defect, std::abs(ip - (j == k ? 1.0 : 0.0)));
        }
    }
    return defect;
}

}  // namespace kf
