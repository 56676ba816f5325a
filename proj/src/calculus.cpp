#include "kf/calculus.hpp"

#include <algorithm>
#include <cmath>

#include "kf/detail/series.hpp"
#include "kf/errors.hpp"

namespace kf {

namespace {

// Tail of sum_k z^{2k}/k! beyond K, summed numerically from the small end.
std::vector<double> series_terms(double z, double tol) {
    double zz = z * z;
    if (zz >= 700.0) {
        throw NumericalError("series truncation bound overflows for |z| this large");
    }
    std::vector<double> t{1.0};
    int k = 1;
    while ((t.back() >= tol * 1e-3 || static_cast<double>(k) <= zz) && k < 4000) {
        t.push_back(t.back() * zz / k);
        ++k;
    }
    return t;
}

double tail_beyond(const std::vector<double>& t, int order) {
    double tail = 0.0;
    for (std::size_t j = t.size(); j-- > static_cast<std::size_t>(order) + 1;) tail += t[j];
    return tail;
}

}  // namespace

int truncation_order(double z, double tol) {
    if (!(tol > 0.0)) throw ConfigError("truncation tolerance must be > 0");
    z = std::abs(z);
    if (z == 0.0) return 0;
    auto t = series_terms(z, tol);
    double tail = 0.0;
    for (std::size_t j = t.size(); j-- > 0;) {
        tail += t[j];
        if (tail >= tol) return static_cast<int>(j);
    }
    return 0;
}

namespace detail {

SeriesFine series_on_mesh(const QuadratureMesh& mesh, double z, double tol, bool alternating) {
    if (!(tol > 0.0)) throw ConfigError("series tolerance must be > 0");
    const double az = std::abs(z);
    const double family_factor = std::max(1.0, az * az * az);
    const int order = truncation_order(z, tol / family_factor);

    const std::size_t n = mesh.points().size();
    SeriesFine out;
    out.order = order;
    out.even.assign(n, 0.0);
    out.odd.assign(n, 0.0);
    out.d_even.assign(n, 0.0);
    out.d_odd.assign(n, 0.0);

    std::vector<double> p_even(n, 1.0);
    std::vector<double> q_even(n, 1.0);

    double zz_pow = 1.0;  // z^{2k}
    double sign = 1.0;
    for (int k = 0; k <= order; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            out.even[i] += sign * zz_pow * p_even[i];
            out.d_odd[i] += sign * zz_pow * z * q_even[i];
        }
        auto p_odd = mesh.cum_stieltjes(p_even);
        auto q_odd = mesh.cum_lebesgue(q_even);
        double next_sign = alternating ? -sign : sign;
        for (std::size_t i = 0; i < n; ++i) {
            out.odd[i] += sign * zz_pow * z * q_odd[i];
            out.d_even[i] += next_sign * zz_pow * z * z * p_odd[i];
        }
        if (k < order) {
            p_even = mesh.cum_lebesgue(p_odd);
            q_even = mesh.cum_stieltjes(q_odd);
        }
        zz_pow *= z * z;
        sign = next_sign;
    }

    if (az > 0.0) {
        out.tail_bound = family_factor * tail_beyond(series_terms(az, tol / family_factor), order);
    }
    return out;
}

}  // namespace detail

MonomialTable monomial_table(const Measure& m, int max_order, GridPtr grid) {
    if (max_order < 0) throw ConfigError("monomial order must be >= 0");
    QuadratureMesh mesh(m, std::move(grid));
    MonomialTable table;
    table.measure = m;
    table.grid = mesh.coarse();
    table.max_order = max_order;

    const std::size_t n = mesh.points().size();
    std::vector<double> p(n, 1.0), q(n, 1.0);
    table.p.push_back(mesh.restrict(p).values());
    table.q.push_back(mesh.restrict(q).values());
    for (int k = 1; k <= max_order; ++k) {
        p = (k % 2 == 1) ? mesh.cum_stieltjes(p) : mesh.cum_lebesgue(p);
        q = (k % 2 == 1) ? mesh.cum_lebesgue(q) : mesh.cum_stieltjes(q);
        table.p.push_back(mesh.restrict(p).values());
        table.q.push_back(mesh.restrict(q).values());
    }
    return table;
}

HyperbolicFunctions hyperbolic(const QuadratureMesh& mesh, double z, double tol) {
    auto s = detail::series_on_mesh(mesh, z, tol, false);
    HyperbolicFunctions h;
    h.measure = mesh.measure();
    h.z = z;
    h.order = s.order;
    h.tail_bound = s.tail_bound;
    h.cosh_z = mesh.restrict(s.even);
    h.sinh_z = mesh.restrict(s.odd);
    h.dcosh_z = mesh.restrict(s.d_even);
    h.dsinh_z = mesh.restrict(s.d_odd);
    return h;
}

// The trapezoid error of the cumulative monomial recursion scales with the
// square of the cell width; the series entry points use a finer mesh than
// the propagation-based solvers so classical limits hold to 1e-8 up to z=4.
constexpr double kSeriesCellWidth = 1.0 / 262144.0;

HyperbolicFunctions hyperbolic(const Measure& m, double z, GridPtr grid, double tol) {
    return hyperbolic(QuadratureMesh(m, std::move(grid), kSeriesCellWidth), z, tol);
}

TrigFunctions trig(const QuadratureMesh& mesh, double z, double tol) {
    auto s = detail::series_on_mesh(mesh, z, tol, true);
    TrigFunctions t;
    t.measure = mesh.measure();
    t.z = z;
    t.order = s.order;
    t.tail_bound = s.tail_bound;
    t.cos_z = mesh.restrict(s.even);
    t.sin_z = mesh.restrict(s.odd);
    t.dcos_z = mesh.restrict(s.d_even);
    t.dsin_z = mesh.restrict(s.d_odd);
    return t;
}

TrigFunctions trig(const Measure& m, double z, GridPtr grid, double tol) {
    return trig(QuadratureMesh(m, std::move(grid), kSeriesCellWidth), z, tol);
}

OperatorSamples apply_krein_feller(const Measure& m, const GridFunction& f, double h) {
    if (!(h > 0.0)) throw ConfigError("difference step must be > 0");
    auto gaps = m.support_gaps(std::max(h, 1e-6));
    OperatorSamples out;
    for (double x : *f.grid()) {
        if (x < 2.0 * h || x > 1.0 - 2.0 * h) continue;
        bool in_gap = false;
        for (const Gap& g : gaps) {
            if (x > g.lo && x < g.hi) {
                in_gap = true;
                break;
            }
        }
        if (in_gap) continue;
        // The one-sided slopes average f' over [x, x+2h] and [x-2h, x], so
        // the mass they see is the averaged CDF increment, not F(x+h) -
        // F(x-h); for self-similar measures the two differ by O(1).
        const int kSub = 64;
        double fx = m.cdf(x);
        double denom = 0.0;
        for (int j = 0; j < kSub; ++j) {
            double s = 2.0 * h * (j + 0.5) / kSub;
            denom += (m.cdf(x + s) - fx) + (fx - m.cdf(x - s));
        }
        denom /= kSub;
        if (denom < 1e-12) continue;
        double deriv_right = (f(x + 2.0 * h) - f(x)) / (2.0 * h);
        double deriv_left = (f(x) - f(x - 2.0 * h)) / (2.0 * h);
        out.x.push_back(x);
        out.value.push_back((deriv_right - deriv_left) / denom);
    }
    return out;
}

}  // namespace kf
