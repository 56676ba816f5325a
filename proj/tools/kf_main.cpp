#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kf/calculus.hpp"
#include "kf/errors.hpp"
#include "kf/experiments.hpp"
#include "kf/io.hpp"
#include "kf/measure.hpp"
#include "kf/resolvent.hpp"
#include "kf/semigroup.hpp"
#include "kf/spectral.hpp"

namespace {

struct Common {
    std::string config;
    std::string out;
    std::size_t grid = 2049;
    double tol = 1e-10;
    std::string format = "csv";
    bool svg = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "measure/family config file (JSON)");
    cmd->add_option("--out", c.out, "output directory (default: stdout)");
    cmd->add_option("--grid", c.grid, "number of grid points")->check(CLI::Range(3, 1 << 20));
    cmd->add_option("--tol", c.tol, "numeric tolerance");
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--svg", c.svg, "also emit an SVG line plot");
}

std::string fmt(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

struct Table {
    std::vector<std::string> cols;
    std::vector<std::vector<double>> rows;
};

void emit(const Table& t, const Common& c, const std::string& name) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!c.out.empty()) {
        std::filesystem::create_directories(c.out);
        file.open(c.out + "/" + name + (c.format == "json" ? ".json" : ".csv"));
        if (!file) throw kf::ConfigError("cannot write to output directory " + c.out);
        os = &file;
    }
    if (c.format == "json") {
        nlohmann::json j;
        j["columns"] = t.cols;
        j["rows"] = t.rows;
        *os << j.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < t.cols.size(); ++i) *os << (i ? "," : "") << t.cols[i];
    *os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) *os << (i ? "," : "") << fmt(row[i]);
        *os << "\n";
    }
}

kf::Measure load_measure(const Common& c) {
    if (c.config.empty()) return kf::Measure::lebesgue();
    return kf::measure_from_json(kf::load_json_file(c.config));
}

std::vector<double> parse_times(const std::string& s) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto pos = s.find(',', start);
        std::string part = s.substr(start, pos - start);
        if (!part.empty()) {
            try {
                out.push_back(std::stod(part));
            } catch (const std::exception&) {
                throw kf::ConfigError("invalid time value: " + part);
            }
        }
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (out.empty()) throw kf::ConfigError("empty time list");
    return out;
}

const std::map<std::string, kf::Boundary> kBcMap = {{"neumann", kf::Boundary::Neumann},
                                                    {"dirichlet", kf::Boundary::Dirichlet}};

int run(int argc, char** argv) {
    CLI::App app{"Krein-Feller operator numerics on [0,1]"};
    app.require_subcommand(1);

    Common c;
    kf::Boundary bc = kf::Boundary::Neumann;
    double lambda = 1.0;
    double z = 1.0;
    int order = 10;
    int count = 5;
    int atoms = 2000;
    int steps = 32;
    double delta = 0.05;
    bool use_trig = false;
    bool timing = false;
    std::string method = "shooting";
    std::string heat_method = "eigen";
    std::string rhs;
    std::string experiment = "resolvent";
    std::string family_path;
    std::string times_str = "0,0.05,0.1,0.5";

    auto* cmd_measure = app.add_subcommand("measure", "dump CDF samples");
    add_common(cmd_measure, c);

    auto* cmd_mono = app.add_subcommand("monomials", "generalized monomials p_k, q_k");
    add_common(cmd_mono, c);
    cmd_mono->add_option("--order", order, "max monomial order")->check(CLI::Range(0, 200));

    auto* cmd_hyp = app.add_subcommand("hyperbolic", "generalized hyperbolic/trig functions");
    add_common(cmd_hyp, c);
    cmd_hyp->add_option("--z", z, "series parameter z");
    cmd_hyp->add_flag("--trig", use_trig, "alternating-sign (trigonometric) variant");

    auto* cmd_spec = app.add_subcommand("spectrum", "eigenvalues of -d/dmu d/dx");
    add_common(cmd_spec, c);
    cmd_spec->add_option("--bc", bc, "boundary condition")
        ->transform(CLI::CheckedTransformer(kBcMap, CLI::ignore_case));
    cmd_spec->add_option("--count", count, "number of eigenpairs")->check(CLI::Range(1, 64));
    cmd_spec->add_option("--method", method, "shooting or oracle")
        ->check(CLI::IsMember({"shooting", "oracle"}));
    cmd_spec->add_option("--atoms", atoms, "oracle atom count");

    auto* cmd_res = app.add_subcommand("resolvent", "apply the resolvent to a right-hand side");
    add_common(cmd_res, c);
    cmd_res->add_option("--bc", bc, "boundary condition")
        ->transform(CLI::CheckedTransformer(kBcMap, CLI::ignore_case));
    cmd_res->add_option("--lambda", lambda, "resolvent parameter");
    cmd_res->add_option("--rhs", rhs, "rhs descriptor (const:c|x|x1mx|sin:k|hat:a,b,c)");

    auto* cmd_heat = app.add_subcommand("heat", "solve the heat equation");
    add_common(cmd_heat, c);
    cmd_heat->add_option("--bc", bc, "boundary condition")
        ->transform(CLI::CheckedTransformer(kBcMap, CLI::ignore_case));
    cmd_heat->add_option("--rhs", rhs, "initial data descriptor");
    cmd_heat->add_option("--times", times_str, "comma-separated time grid");
    cmd_heat->add_option("--method", heat_method, "eigen or euler")
        ->check(CLI::IsMember({"eigen", "euler"}));
    cmd_heat->add_option("--steps", steps, "backward Euler steps");

    auto* cmd_conv = app.add_subcommand("converge", "convergence experiments over a family");
    add_common(cmd_conv, c);
    cmd_conv->add_option("--experiment", experiment, "experiment kind")
        ->check(CLI::IsMember({"resolvent", "graph", "semigroup", "composed"}));
    cmd_conv->add_option("--bc", bc, "boundary condition")
        ->transform(CLI::CheckedTransformer(kBcMap, CLI::ignore_case));
    cmd_conv->add_option("--lambda", lambda, "resolvent parameter");
    cmd_conv->add_option("--times", times_str, "comma-separated time grid");
    cmd_conv->add_option("--family", family_path, "family spec file (JSON)");
    cmd_conv->add_option("--rhs", rhs, "rhs descriptor");
    cmd_conv->add_option("--delta", delta, "target accuracy for the composed demo");
    cmd_conv->add_flag("--timing", timing, "measure per-row runtimes (non-deterministic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }

    if (*cmd_measure) {
        auto m = load_measure(c);
        auto g = kf::make_grid(m, c.grid);
        Table t{{"x", "F"}, {}};
        for (double x : *g) t.rows.push_back({x, m.cdf(x)});
        emit(t, c, "measure");
        return 0;
    }

    if (*cmd_mono) {
        auto m = load_measure(c);
        auto tbl = kf::monomial_table(m, order, kf::make_grid(m, c.grid));
        Table t;
        t.cols.push_back("x");
        for (int k = 0; k <= order; ++k) t.cols.push_back("p" + std::to_string(k));
        for (int k = 0; k <= order; ++k) t.cols.push_back("q" + std::to_string(k));
        for (std::size_t i = 0; i < tbl.grid->size(); ++i) {
            std::vector<double> row{(*tbl.grid)[i]};
            for (int k = 0; k <= order; ++k) row.push_back(tbl.p[k][i]);
            for (int k = 0; k <= order; ++k) row.push_back(tbl.q[k][i]);
            t.rows.push_back(std::move(row));
        }
        emit(t, c, "monomials");
        return 0;
    }

    if (*cmd_hyp) {
        auto m = load_measure(c);
        auto g = kf::make_grid(m, c.grid);
        Table t;
        if (use_trig) {
            auto f = kf::trig(m, z, g, c.tol);
            t.cols = {"x", "cos", "sin", "dcos", "dsin"};
            for (std::size_t i = 0; i < g->size(); ++i) {
                t.rows.push_back({(*g)[i], f.cos_z.values()[i], f.sin_z.values()[i],
                                  f.dcos_z.values()[i], f.dsin_z.values()[i]});
            }
        } else {
            auto f = kf::hyperbolic(m, z, g, c.tol);
            t.cols = {"x", "cosh", "sinh", "dcosh", "dsinh"};
            for (std::size_t i = 0; i < g->size(); ++i) {
                t.rows.push_back({(*g)[i], f.cosh_z.values()[i], f.sinh_z.values()[i],
                                  f.dcosh_z.values()[i], f.dsinh_z.values()[i]});
            }
        }
        emit(t, c, "hyperbolic");
        return 0;
    }

    if (*cmd_spec) {
        auto m = load_measure(c);
        auto s = method == "oracle" ? kf::eigen_matrix_oracle(m, bc, atoms, count)
                                    : kf::eigen_shooting(m, bc, count, c.tol,
                                                         kf::make_grid(m, c.grid));
        Table t{{"k", "lambda"}, {}};
        for (int k = 0; k < s.count(); ++k) {
            t.rows.push_back({static_cast<double>(k + 1), s.eigenvalues[k]});
        }
        emit(t, c, "spectrum");
        return 0;
    }

    if (*cmd_res) {
        auto m = load_measure(c);
        auto g = kf::make_grid(m, c.grid);
        auto f = kf::rhs_from_descriptor(rhs.empty() ? "const:1" : rhs, g);
        auto u = kf::apply_resolvent(m, bc, lambda, f, kf::union_grid(g, f.grid()));
        double residual = kf::verify_resolvent(m, bc, lambda, f, u);
        std::cerr << "residual=" << fmt(residual) << "\n";
        Table t{{"x", "u"}, {}};
        for (std::size_t i = 0; i < u.grid()->size(); ++i) {
            t.rows.push_back({(*u.grid())[i], u.values()[i]});
        }
        emit(t, c, "resolvent");
        return 0;
    }

    if (*cmd_heat) {
        auto m = load_measure(c);
        auto g = kf::make_grid(m, c.grid);
        std::string d = rhs.empty() ? (bc == kf::Boundary::Dirichlet ? "x1mx" : "x") : rhs;
        auto f = kf::rhs_from_descriptor(d, g);
        auto times = parse_times(times_str);
        if (times.front() != 0.0) times.insert(times.begin(), 0.0);

        std::vector<kf::GridFunction> states;
        if (heat_method == "euler") {
            for (double tt : times) {
                states.push_back(tt == 0.0
                                     ? f
                                     : kf::apply_semigroup(m, bc, tt, f,
                                                           kf::SemigroupMethod::BackwardEuler,
                                                           steps));
            }
        } else {
            auto sol = kf::solve_heat(m, bc, f, times);
            states = std::move(sol.states);
        }
        Table t;
        t.cols.push_back("x");
        for (double tt : times) t.cols.push_back("t=" + fmt(tt));
        for (double x : *g) {
            std::vector<double> row{x};
            for (const auto& s : states) row.push_back(s(x));
            t.rows.push_back(std::move(row));
        }
        emit(t, c, "heat");
        return 0;
    }

    if (*cmd_conv) {
        kf::FamilySpec fspec;
        if (!family_path.empty()) {
            fspec = kf::family_spec_from_json(kf::load_json_file(family_path));
        }
        auto times = parse_times(times_str);
        std::string d = rhs.empty() ? (bc == kf::Boundary::Dirichlet ? "sin:1" : "x") : rhs;

        kf::ExperimentReport rep;
        if (experiment == "composed") {
            auto limit = kf::Measure::cantor(fspec.w1, fspec.w2);
            auto f = kf::rhs_from_descriptor(d, kf::make_grid(limit, c.grid));
            rep = kf::composed_limit_demo(times.back(), delta, bc, f, fspec.w1, fspec.w2, timing);
        } else {
            auto family = kf::build_family(fspec);
            auto f = kf::rhs_from_descriptor(d, kf::make_grid(family.limit, c.grid));
            if (experiment == "resolvent") {
                rep = kf::resolvent_convergence(family, lambda, bc, f, timing);
            } else if (experiment == "graph") {
                rep = kf::graph_norm_convergence(family, lambda, bc, f, timing);
            } else {
                rep = kf::semigroup_convergence(family, times, bc, f, timing);
            }
        }
        rep.rhs = d;
        rep.lambda = lambda;

        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!c.out.empty()) {
            std::filesystem::create_directories(c.out);
            file.open(c.out + "/converge." + (c.format == "json" ? "json" : "csv"));
            if (!file) throw kf::ConfigError("cannot write to output directory " + c.out);
            os = &file;
        }
        if (c.format == "json") {
            nlohmann::json j;
            j["experiment"] = experiment;
            j["bc"] = kf::to_string(bc);
            j["lambda"] = rep.lambda;
            j["rhs"] = rep.rhs;
            j["rows"] = nlohmann::json::array();
            for (const auto& row : rep.rows) {
                nlohmann::json r{{"label", row.label},
                                 {"cdf_dist", row.cdf_dist},
                                 {"error_sup", row.error_sup},
                                 {"theory_bound", row.theory_bound},
                                 {"runtime_s", row.runtime_s}};
                if (!row.per_time.empty()) {
                    r["per_time"] = row.per_time;
                }
                j["rows"].push_back(std::move(r));
            }
            *os << j.dump(2) << "\n";
        } else {
            kf::write_csv(rep, *os);
        }
        if (c.svg) {
            std::string dir = c.out.empty() ? "." : c.out;
            std::ofstream svg(dir + "/converge.svg");
            if (!svg) throw kf::ConfigError("cannot write SVG to " + dir);
            kf::write_svg(rep, svg);
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const kf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const kf::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const kf::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
