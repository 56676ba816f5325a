#include "kf/grid.hpp"

#include <algorithm>
#include <cmath>

#include "kf/errors.hpp"

namespace kf {

namespace {

std::vector<double> sorted_unique(std::vector<double> pts) {
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    out.reserve(pts.size());
    for (double x : pts) {
        if (out.empty() || x - out.back() > 1e-13) out.push_back(x);
    }
    return out;
}

}  // namespace

GridPtr make_grid_points(std::vector<double> pts) {
    pts.push_back(0.0);
    pts.push_back(1.0);
    auto out = sorted_unique(std::move(pts));
    if (out.front() < 0.0 || out.back() > 1.0) {
        throw ConfigError("grid points must lie in [0,1]");
    }
    out.front() = 0.0;
    out.back() = 1.0;
    return std::make_shared<const std::vector<double>>(std::move(out));
}

GridPtr uniform_grid(std::size_t n) {
    if (n < 2) throw ConfigError("grid needs at least 2 points");
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(i) / (n - 1);
    pts.back() = 1.0;
    return std::make_shared<const std::vector<double>>(std::move(pts));
}

GridPtr make_grid(const Measure& m, std::size_t n) {
    if (n < 2) throw ConfigError("grid needs at least 2 points");
    std::vector<double> pts;
    pts.reserve(n + 256);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(static_cast<double>(i) / (n - 1));
    double resolution = 0.5 / static_cast<double>(n - 1);
    for (const Gap& g : m.support_gaps(resolution)) {
        pts.push_back(g.lo);
        pts.push_back(g.hi);
    }
    return make_grid_points(std::move(pts));
}

GridPtr union_grid(const GridPtr& a, const GridPtr& b) {
    std::vector<double> pts;
    pts.reserve(a->size() + b->size());
    pts.insert(pts.end(), a->begin(), a->end());
    pts.insert(pts.end(), b->begin(), b->end());
    return make_grid_points(std::move(pts));
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_ || grid_->size() != values_.size() || grid_->size() < 2) {
        throw ConfigError("grid function needs matching grid and value arrays");
    }
}

double GridFunction::operator()(double x) const {
    const auto& g = *grid_;
    if (x <= g.front()) return values_.front();
    if (x >= g.back()) return values_.back();
    auto it = std::upper_bound(g.begin(), g.end(), x);
    std::size_t i = static_cast<std::size_t>(it - g.begin());
    double t = (x - g[i - 1]) / (g[i] - g[i - 1]);
    return values_[i - 1] + t * (values_[i] - values_[i - 1]);
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

GridFunction GridFunction::on_grid(const GridPtr& other) const {
    if (other == grid_) return *this;
    std::vector<double> v;
    v.reserve(other->size());
    for (double x : *other) v.push_back((*this)(x));
    return GridFunction(other, std::move(v));
}

double sup_distance(const GridFunction& f, const GridFunction& g) {
    GridPtr u = (f.grid() == g.grid()) ? f.grid() : union_grid(f.grid(), g.grid());
    double m = 0.0;
    for (double x : *u) m = std::max(m, std::abs(f(x) - g(x)));
    return m;
}

QuadratureMesh::QuadratureMesh(const Measure& m, GridPtr coarse, double cell_width)
    : measure_(m), coarse_(std::move(coarse)) {
    if (!(cell_width > 0.0)) throw ConfigError("mesh cell width must be > 0");
    std::vector<double> pts(coarse_->begin(), coarse_->end());
    // Structure points go much deeper than the fill width: on a purely
    // singular part the trapezoid error of Stieltjes sums scales with the
    // support-cell width, and the self-similar cell count grows slowly.
    std::vector<double> extra;
    m.structure_points(0.0, 1.0, cell_width / 64.0, extra);
    // Keep the coarse representative when a structure point is a float-level
    // duplicate of a grid point; the CDF can move a lot across 1e-13 near a
    // self-similar boundary, so which float survives matters.
    for (double s : extra) {
        auto it = std::lower_bound(coarse_->begin(), coarse_->end(), s);
        bool near = (it != coarse_->end() && *it - s <= 1e-13) ||
                    (it != coarse_->begin() && s - *(it - 1) <= 1e-13);
        if (!near) pts.push_back(s);
    }
    pts = sorted_unique(std::move(pts));

    // Cells inside support gaps of a purely singular measure carry no mass
    // and every integrand we ever meet there is (piecewise) linear, so they
    // need no subdivision.
    const bool fill = m.has_density();
    x_.reserve(fill ? static_cast<std::size_t>(1.0 / cell_width) + pts.size() : pts.size());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double a = pts[i], b = pts[i + 1];
        x_.push_back(a);
        double w = b - a;
        if (fill && w > cell_width) {
            auto k = static_cast<std::size_t>(std::ceil(w / cell_width));
            for (std::size_t j = 1; j < k; ++j) x_.push_back(a + w * static_cast<double>(j) / k);
        }
    }
    x_.push_back(pts.back());

    mass_.resize(x_.size() - 1);
    double prev = m.cdf(x_[0]);
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
        double next = m.cdf(x_[i + 1]);
        mass_[i] = std::max(0.0, next - prev);
        prev = next;
    }

    coarse_index_.reserve(coarse_->size());
    for (double c : *coarse_) {
        auto it = std::lower_bound(x_.begin(), x_.end(), c);
        coarse_index_.push_back(static_cast<std::size_t>(it - x_.begin()));
    }
}

std::vector<double> QuadratureMesh::cum_stieltjes(std::span<const double> g) const {
    std::vector<double> out(x_.size());
    out[0] = 0.0;
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
        out[i + 1] = out[i] + 0.5 * (g[i] + g[i + 1]) * mass_[i];
    }
    return out;
}

std::vector<double> QuadratureMesh::cum_lebesgue(std::span<const double> g) const {
    std::vector<double> out(x_.size());
    out[0] = 0.0;
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
        out[i + 1] = out[i] + 0.5 * (g[i] + g[i + 1]) * (x_[i + 1] - x_[i]);
    }
    return out;
}

double QuadratureMesh::integrate_stieltjes(std::span<const double> g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) s += 0.5 * (g[i] + g[i + 1]) * mass_[i];
    return s;
}

double QuadratureMesh::inner_mu(std::span<const double> f, std::span<const double> g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        s += 0.5 * (f[i] * g[i] + f[i + 1] * g[i + 1]) * mass_[i];
    }
    return s;
}

std::vector<double> QuadratureMesh::sample(const GridFunction& f) const {
    std::vector<double> v;
    v.reserve(x_.size());
    for (double x : x_) v.push_back(f(x));
    return v;
}

GridFunction QuadratureMesh::restrict(std::span<const double> fine) const {
    std::vector<double> v;
    v.reserve(coarse_index_.size());
    for (std::size_t i : coarse_index_) v.push_back(fine[i]);
    return GridFunction(coarse_, std::move(v));
}

}  // namespace kf
