#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "kf/measure.hpp"

namespace kf {

using GridPtr = std::shared_ptr<const std::vector<double>>;

/// Strictly ascending sample points in [0,1], first point 0, last point 1.
GridPtr make_grid_points(std::vector<double> pts);

/// n uniform points plus the endpoints of every support gap of `m` wider
/// than roughly one grid cell.
GridPtr make_grid(const Measure& m, std::size_t n);

GridPtr uniform_grid(std::size_t n);

GridPtr union_grid(const GridPtr& a, const GridPtr& b);

/// A continuous function on [0,1] sampled on a grid; evaluation anywhere is
/// linear interpolation of the bracketing samples.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(GridPtr grid, std::vector<double> values);

    template <class F>
    static GridFunction sample(GridPtr grid, F&& f) {
        std::vector<double> v;
        v.reserve(grid->size());
        for (double x : *grid) v.push_back(f(x));
        return GridFunction(std::move(grid), std::move(v));
    }

    double operator()(double x) const;
    const GridPtr& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    std::size_t size() const { return values_.size(); }

    double sup_norm() const;
    /// Re-sample (by linear interpolation) onto another grid.
    GridFunction on_grid(const GridPtr& other) const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

double sup_distance(const GridFunction& f, const GridFunction& g);

/// Fine partition of [0,1] adapted to a measure, with the mass of every cell
/// precomputed. Cells are aligned with the measure's self-similar structure,
/// so cumulative trapezoid sums against dx and dF converge fast.
class QuadratureMesh {
public:
    static constexpr double kDefaultCellWidth = 1.0 / 65536.0;

    QuadratureMesh(const Measure& m, GridPtr coarse, double cell_width = kDefaultCellWidth);

    const Measure& measure() const { return measure_; }
    const GridPtr& coarse() const { return coarse_; }
    const std::vector<double>& points() const { return x_; }
    const std::vector<double>& cell_mass() const { return mass_; }
    std::size_t cells() const { return mass_.size(); }

    /// Cumulative trapezoid integral of g against the measure: out[i] =
    /// integral of g over [0, x_i] dF.
    std::vector<double> cum_stieltjes(std::span<const double> g) const;
    /// Same against Lebesgue measure dx.
    std::vector<double> cum_lebesgue(std::span<const double> g) const;

    double integrate_stieltjes(std::span<const double> g) const;
    double inner_mu(std::span<const double> f, std::span<const double> g) const;

    /// Values of a grid function at the mesh points.
    std::vector<double> sample(const GridFunction& f) const;
    template <class F>
    std::vector<double> sample_fn(F&& f) const {
        std::vector<double> v;
        v.reserve(x_.size());
        for (double x : x_) v.push_back(f(x));
        return v;
    }

    /// Restriction of fine-point values to the coarse grid.
    GridFunction restrict(std::span<const double> fine) const;

    /// Index of each coarse grid point within points().
    const std::vector<std::size_t>& coarse_index() const { return coarse_index_; }

private:
    Measure measure_;
    GridPtr coarse_;
    std::vector<double> x_;
    std::vector<double> mass_;
    std::vector<std::size_t> coarse_index_;
};

}  // namespace kf
