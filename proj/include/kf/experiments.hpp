#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kf/boundary.hpp"
#include "kf/grid.hpp"
#include "kf/measure.hpp"

namespace kf {

enum class FamilyKind { CantorLevels, EpsilonMixture, Composed };

/// A limit measure with an ordered sequence of approximants converging to it
/// weakly (equivalently: in CDF sup-distance).
struct MeasureFamily {
    Measure limit;
    std::vector<Measure> approximants;
    FamilyKind kind = FamilyKind::CantorLevels;
    std::vector<std::string> labels;
};

struct FamilySpec {
    FamilyKind kind = FamilyKind::CantorLevels;
    double w1 = 0.5, w2 = 0.5;
    std::vector<int> levels;
    std::vector<double> epsilons;
    std::optional<Measure> base;  // epsilon_mixture limit; default cantor(w1,w2)
};

MeasureFamily build_family(const FamilySpec& spec);

/// Gap-linear extension of f from the support of `from` to the (larger)
/// support of `to`; requires supp(from) contained in supp(to) at gap
/// resolution.
GridFunction embed(const GridFunction& f, const Measure& from, const Measure& to);

enum class ExperimentKind { Resolvent, GraphNorm, Semigroup, Composed };

struct ExperimentRow {
    std::string label;
    double cdf_dist = 0.0;
    double error_sup = 0.0;
    double theory_bound = 0.0;
    double runtime_s = 0.0;
    double density_sup = 0.0;                         // resolvent experiment only
    std::vector<std::pair<double, double>> per_time;  // semigroup breakdown (t, error)
};

struct ExperimentReport {
    ExperimentKind experiment = ExperimentKind::Resolvent;
    Boundary bc = Boundary::Neumann;
    double lambda = 0.0;
    std::vector<double> times;
    std::string rhs;
    std::vector<ExperimentRow> rows;
};

/// Per approximant: u_n from the approximant resolvent vs the embedded limit
/// solution; records the sup error, the density sup-difference, and the
/// explicit density bound (asserted row-wise, violation is an error).
ExperimentReport resolvent_convergence(const MeasureFamily& family, double lambda, Boundary bc,
                                       const GridFunction& f, bool timing = false);

/// f = R_lambda g against f_n = R_{lambda,n} pi_n g; the graph-norm error
/// equals lambda times the function error exactly (reported in theory_bound).
ExperimentReport graph_norm_convergence(const MeasureFamily& family, double lambda, Boundary bc,
                                        const GridFunction& g, bool timing = false);

/// Max over the time grid of the embedded semigroup error, with per-time
/// breakdown.
ExperimentReport semigroup_convergence(const MeasureFamily& family, std::vector<double> times,
                                       Boundary bc, const GridFunction& f, bool timing = false);

/// Finds (level n, epsilon) with the composed approximant heat state within
/// delta of the limit state at time t; rows record every tried pair.
ExperimentReport composed_limit_demo(double t, double delta, Boundary bc, const GridFunction& f,
                                     double w1 = 0.5, double w2 = 0.5, bool timing = false);

void write_csv(const ExperimentReport& report, std::ostream& os);
void write_svg(const ExperimentReport& report, std::ostream& os);

}  // namespace kf
