#include "kf/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "kf/errors.hpp"
#include "kf/resolvent.hpp"
#include "kf/semigroup.hpp"

namespace kf {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

std::string fmt_num(double v, int precision) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
    return std::string(buf, p);
}

void check_family_distances(const MeasureFamily& fam) {
    double prev = 2.0;
    for (const auto& m : fam.approximants) {
        double d = cdf_distance(fam.limit, m);
        if (d > prev + 1e-12) {
            throw ConfigError("family approximants must have non-increasing CDF distance");
        }
        prev = d;
    }
}

double density_sup_diff(const ResolventDensity& a, const ResolventDensity& b,
                        const std::vector<double>& pts) {
    double sup = 0.0;
    for (double x : pts) {
        for (double y : pts) {
            sup = std::max(sup, std::abs(a(x, y) - b(x, y)));
        }
    }
    return sup;
}

}  // namespace

MeasureFamily build_family(const FamilySpec& spec) {
    if (!(spec.w1 > 0.0 && spec.w2 > 0.0 && std::abs(spec.w1 + spec.w2 - 1.0) < 1e-12)) {
        throw ConfigError("cantor weights must be positive and sum to 1");
    }
    MeasureFamily fam;
    fam.kind = spec.kind;
    switch (spec.kind) {
        case FamilyKind::CantorLevels: {
            fam.limit = Measure::cantor(spec.w1, spec.w2);
            auto levels = spec.levels;
            if (levels.empty()) levels = {1, 2, 3, 4, 5, 6};
            for (int n : levels) {
                if (n < 1) throw ConfigError("cantor approximation level must be >= 1");
                fam.approximants.push_back(Measure::cantor_approx(spec.w1, spec.w2, n));
                fam.labels.push_back("n=" + std::to_string(n));
            }
            break;
        }
        case FamilyKind::EpsilonMixture: {
            fam.limit = spec.base ? *spec.base : Measure::cantor(spec.w1, spec.w2);
            if (spec.epsilons.empty()) throw ConfigError("epsilon_mixture family needs epsilons");
            for (double eps : spec.epsilons) {
                if (!(eps > 0.0)) throw ConfigError("mixture epsilon must be > 0");
                fam.approximants.push_back(Measure::mixture(fam.limit, eps));
                fam.labels.push_back("eps=" + fmt(eps));
            }
            break;
        }
        case FamilyKind::Composed: {
            fam.limit = Measure::cantor(spec.w1, spec.w2);
            if (spec.levels.size() != spec.epsilons.size() || spec.levels.empty()) {
                throw ConfigError("composed family needs matching levels and epsilons");
            }
            for (std::size_t j = 0; j < spec.levels.size(); ++j) {
                int n = spec.levels[j];
                double eps = spec.epsilons[j];
                if (n < 1 || !(eps > 0.0)) throw ConfigError("invalid composed family entry");
                fam.approximants.push_back(
                    Measure::mixture(Measure::cantor_approx(spec.w1, spec.w2, n), eps));
                fam.labels.push_back("n=" + std::to_string(n) + ",eps=" + fmt(eps));
            }
            break;
        }
    }
    check_family_distances(fam);
    return fam;
}

GridFunction embed(const GridFunction& f, const Measure& from, const Measure& to) {
    constexpr double res = 1e-4;
    auto gaps_from = from.support_gaps(res);
    for (const Gap& g : to.support_gaps(res)) {
        bool covered = false;
        for (const Gap& h : gaps_from) {
            if (h.lo <= g.lo + 1e-9 && g.hi <= h.hi + 1e-9) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            throw ConfigError("embedding requires supp(from) contained in supp(to)");
        }
    }
    GridPtr grid = union_grid(f.grid(), make_grid(from, f.grid()->size()));
    return f.on_grid(grid);
}

ExperimentReport resolvent_convergence(const MeasureFamily& family, double lambda, Boundary bc,
                                       const GridFunction& f, bool timing) {
    if (!(lambda > 0.0)) throw ConfigError("experiment lambda must be > 0");
    ExperimentReport rep;
    rep.experiment = ExperimentKind::Resolvent;
    rep.bc = bc;
    rep.lambda = lambda;

    GridPtr ugrid = union_grid(f.grid(), make_grid(family.limit, 1025));
    GridFunction u = apply_resolvent(family.limit, bc, lambda, f, ugrid);
    ResolventDensity rho = resolvent_density(family.limit, bc, lambda);
    GridPtr dgrid_limit = make_grid(family.limit, 129);

    for (std::size_t j = 0; j < family.approximants.size(); ++j) {
        const Measure& mn = family.approximants[j];
        auto start = std::chrono::steady_clock::now();

        ExperimentRow row;
        row.label = family.labels[j];
        row.cdf_dist = cdf_distance(family.limit, mn);

        GridFunction fn = embed(f, family.limit, mn);
        GridFunction un = apply_resolvent(mn, bc, lambda, fn);
        row.error_sup = sup_distance(embed(u, family.limit, mn), un);

        ResolventDensity rho_n = resolvent_density(mn, bc, lambda);
        GridPtr dgrid = union_grid(dgrid_limit, make_grid(mn, 129));
        row.density_sup = density_sup_diff(rho, rho_n, *dgrid);
        row.theory_bound = resolvent_error_bound(lambda, bc, row.cdf_dist);
        if (row.density_sup > row.theory_bound + 1e-6) {
            throw InvariantViolation("resolvent density difference exceeds its explicit bound");
        }
        if (timing) row.runtime_s = seconds_since(start);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

ExperimentReport graph_norm_convergence(const MeasureFamily& family, double lambda, Boundary bc,
                                        const GridFunction& g, bool timing) {
    if (!(lambda > 0.0)) throw ConfigError("experiment lambda must be > 0");
    ExperimentReport rep;
    rep.experiment = ExperimentKind::GraphNorm;
    rep.bc = bc;
    rep.lambda = lambda;

    GridPtr ugrid = union_grid(g.grid(), make_grid(family.limit, 1025));
    GridFunction f = apply_resolvent(family.limit, bc, lambda, g, ugrid);

    for (std::size_t j = 0; j < family.approximants.size(); ++j) {
        const Measure& mn = family.approximants[j];
        auto start = std::chrono::steady_clock::now();

        ExperimentRow row;
        row.label = family.labels[j];
        row.cdf_dist = cdf_distance(family.limit, mn);

        GridFunction gn = embed(g, family.limit, mn);
        GridFunction fn = apply_resolvent(mn, bc, lambda, gn);
        row.error_sup = sup_distance(embed(f, family.limit, mn), fn);
        // Graph-norm error; equals lambda times the function error exactly.
        row.theory_bound = lambda * row.error_sup;
        if (timing) row.runtime_s = seconds_since(start);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

ExperimentReport semigroup_convergence(const MeasureFamily& family, std::vector<double> times,
                                       Boundary bc, const GridFunction& f, bool timing) {
    if (times.empty()) throw ConfigError("semigroup experiment needs a time grid");
    if (times.front() != 0.0) times.insert(times.begin(), 0.0);

    ExperimentReport rep;
    rep.experiment = ExperimentKind::Semigroup;
    rep.bc = bc;
    rep.times = times;

    HeatSolution sol = solve_heat(family.limit, bc, f, times);

    for (std::size_t j = 0; j < family.approximants.size(); ++j) {
        const Measure& mn = family.approximants[j];
        auto start = std::chrono::steady_clock::now();

        ExperimentRow row;
        row.label = family.labels[j];
        row.cdf_dist = cdf_distance(family.limit, mn);

        HeatSolution sol_n = solve_heat(mn, bc, embed(f, family.limit, mn), times);
        for (std::size_t k = 0; k < times.size(); ++k) {
            double e = sup_distance(embed(sol.states[k], family.limit, mn), sol_n.states[k]);
            row.per_time.emplace_back(times[k], e);
            row.error_sup = std::max(row.error_sup, e);
        }
        if (timing) row.runtime_s = seconds_since(start);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

ExperimentReport composed_limit_demo(double t, double delta, Boundary bc, const GridFunction& f,
                                     double w1, double w2, bool timing) {
    if (!(t > 0.0) || !(delta > 0.0)) throw ConfigError("demo needs t > 0 and delta > 0");
    ExperimentReport rep;
    rep.experiment = ExperimentKind::Composed;
    rep.bc = bc;
    rep.times = {t};

    Measure limit = Measure::cantor(w1, w2);
    GridFunction u = solve_heat(limit, bc, f, {0.0, t}).states[1];

    const std::vector<std::pair<int, double>> trials = {
        {1, 0.5}, {2, 0.25}, {3, 0.1}, {4, 0.05}, {5, 0.02}, {6, 0.01}};
    for (auto [n, eps] : trials) {
        auto start = std::chrono::steady_clock::now();
        Measure mn = Measure::mixture(Measure::cantor_approx(w1, w2, n), eps);

        ExperimentRow row;
        row.label = "n=" + std::to_string(n) + ",eps=" + fmt(eps);
        row.cdf_dist = cdf_distance(limit, mn);
        GridFunction un = solve_heat(mn, bc, embed(f, limit, mn), {0.0, t}).states[1];
        row.error_sup = sup_distance(embed(u, limit, mn), un);
        row.theory_bound = delta;
        if (timing) row.runtime_s = seconds_since(start);
        bool done = row.error_sup < delta;
        rep.rows.push_back(std::move(row));
        if (done) return rep;
    }
    throw NumericalError("no composed approximant reached the requested accuracy");
}

void write_csv(const ExperimentReport& report, std::ostream& os) {
    os << "label,cdf_dist,error_sup,theory_bound,runtime_s\n";
    for (const auto& row : report.rows) {
        os << row.label << ',' << fmt(row.cdf_dist) << ',' << fmt(row.error_sup) << ','
           << fmt(row.theory_bound) << ',' << fmt(row.runtime_s) << '\n';
    }
}

void write_svg(const ExperimentReport& report, std::ostream& os) {
    const double w = 480.0, h = 320.0, pad = 40.0;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"320\" "
          "viewBox=\"0 0 480 320\">\n";
    os << "<rect width=\"480\" height=\"320\" fill=\"white\"/>\n";
    os << "<line x1=\"40\" y1=\"280\" x2=\"440\" y2=\"280\" stroke=\"black\"/>\n";
    os << "<line x1=\"40\" y1=\"40\" x2=\"40\" y2=\"280\" stroke=\"black\"/>\n";
    if (!report.rows.empty()) {
        double lo = report.rows.front().error_sup, hi = lo;
        for (const auto& r : report.rows) {
            lo = std::min(lo, r.error_sup);
            hi = std::max(hi, r.error_sup);
        }
        bool log_scale = lo > 0.0;
        double ylo = log_scale ? std::log10(lo) : lo;
        double yhi = log_scale ? std::log10(hi) : hi;
        if (yhi - ylo < 1e-12) yhi = ylo + 1.0;
        os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
        for (std::size_t j = 0; j < report.rows.size(); ++j) {
            double v = report.rows[j].error_sup;
            double yv = log_scale ? std::log10(v) : v;
            double x = pad + (w - 2 * pad) *
                                 (report.rows.size() == 1
                                      ? 0.5
                                      : static_cast<double>(j) / (report.rows.size() - 1));
            double y = h - pad - (h - 2 * pad) * (yv - ylo) / (yhi - ylo);
            if (j) os << ' ';
            os << fmt_num(x, 2) << ',' << fmt_num(y, 2);
        }
        os << "\"/>\n";
        for (std::size_t j = 0; j < report.rows.size(); ++j) {
            double x = pad + (w - 2 * pad) *
                                 (report.rows.size() == 1
                                      ? 0.5
                                      : static_cast<double>(j) / (report.rows.size() - 1));
            os << "<text x=\"" << fmt_num(x, 2)
               << "\" y=\"300\" font-size=\"10\" text-anchor=\"middle\">" << report.rows[j].label
               << "</text>\n";
        }
    }
    os << "</svg>\n";
}

}  // namespace kf
