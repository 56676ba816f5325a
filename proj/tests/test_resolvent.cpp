#include <cmath>

#include "doctest.h"
#include "kf/calculus.hpp"
#include "kf/errors.hpp"
#include "kf/measure.hpp"
#include "kf/quadrature.hpp"
#include "kf/resolvent.hpp"
#include "oracles.hpp"

using kf::Boundary;
using kf::Measure;

TEST_CASE("classical resolvent density values") {
    auto m = Measure::lebesgue();
    // Neumann, lambda = 1: rho(0,1) = cosh(0)cosh(0)/sinh(1) = 1/sinh(1).
    auto rho = kf::resolvent_density(m, Boundary::Neumann, 1.0);
    CHECK(rho(0.0, 1.0) == doctest::Approx(1.0 / std::sinh(1.0)).epsilon(1e-7));
    // Neumann, lambda = 4: rho(1/4,3/4) = cosh(1/2)^2 / (2 sinh 2).
    auto rho4 = kf::resolvent_density(m, Boundary::Neumann, 4.0);
    double expected4 = std::cosh(0.5) * std::cosh(0.5) / (2.0 * std::sinh(2.0));
    CHECK(rho4(0.25, 0.75) == doctest::Approx(expected4).epsilon(1e-7));
    // Dirichlet density vanishes on the boundary.
    auto rhoD = kf::resolvent_density(m, Boundary::Dirichlet, 4.0);
    CHECK(std::abs(rhoD(0.0, 0.5)) < 1e-12);
    CHECK(std::abs(rhoD(0.5, 1.0)) < 1e-12);
    // Symmetry of the kernel.
    CHECK(rho4(0.3, 0.8) == doctest::Approx(rho4(0.8, 0.3)).epsilon(1e-13));
    CHECK(rhoD(0.3, 0.8) >= 0.0);
}

TEST_CASE("classical resolvent kernel matches closed form everywhere") {
    auto m = Measure::lebesgue();
    double lam = 2.0, z = std::sqrt(lam);
    auto rhoN = kf::resolvent_density(m, Boundary::Neumann, lam, kf::uniform_grid(1025));
    auto rhoD = kf::resolvent_density(m, Boundary::Dirichlet, lam, kf::uniform_grid(1025));
    // Sample on points of the 1025-point grid so linear interpolation of the
    // boundary solutions does not enter the comparison.
    double worstN = 0.0, worstD = 0.0;
    for (int i = 0; i <= 32; ++i) {
        for (int j = i; j <= 32; ++j) {
            double x = i / 32.0, y = j / 32.0;
            double en = std::cosh(z * x) * std::cosh(z * (1.0 - y)) / (z * std::sinh(z));
            double ed = std::sinh(z * x) * std::sinh(z * (1.0 - y)) / (z * std::sinh(z));
            worstN = std::max(worstN, std::abs(rhoN(x, y) - en));
            worstD = std::max(worstD, std::abs(rhoD(x, y) - ed));
        }
    }
    CHECK(worstN < 1e-8);
    CHECK(worstD < 1e-8);
}

TEST_CASE("neumann resolvent of a constant is the constant over lambda") {
    auto one = kf::GridFunction::sample(kf::uniform_grid(257), [](double) { return 1.0; });
    for (const auto& m : {Measure::lebesgue(), Measure::cantor(0.5, 0.5),
                          Measure::mixture(Measure::cantor(0.3, 0.7), 0.2)}) {
        for (double lam : {0.5, 1.0, 10.0}) {
            auto u = kf::apply_resolvent(m, Boundary::Neumann, lam, one);
            for (double v : u.values()) CHECK(v == doctest::Approx(1.0 / lam).epsilon(1e-7));
        }
    }
}

TEST_CASE("classical dirichlet resolvent of a constant") {
    // u = (1 - cosh(sqrt(lam)(x - 1/2)) / cosh(sqrt(lam)/2)) / lam.
    auto m = Measure::lebesgue();
    auto one = kf::GridFunction::sample(kf::uniform_grid(257), [](double) { return 1.0; });
    for (double lam : {0.25, 1.0, 9.0}) {
        double z = std::sqrt(lam);
        auto u = kf::apply_resolvent(m, Boundary::Dirichlet, lam, one);
        for (std::size_t i = 0; i < u.size(); ++i) {
            double x = (*u.grid())[i];
            double exact = (1.0 - std::cosh(z * (x - 0.5)) / std::cosh(0.5 * z)) / lam;
            CHECK(u.values()[i] == doctest::Approx(exact).epsilon(1e-7));
        }
    }
    // Spot value from the closed form at lambda = 1, x = 1/2.
    auto u1 = kf::apply_resolvent(m, Boundary::Dirichlet, 1.0, one);
    CHECK(u1(0.5) == doctest::Approx(1.0 - 1.0 / std::cosh(0.5)).epsilon(1e-8));
}

TEST_CASE("resolvent of a classical eigenfunction rescales it") {
    // -u'' = pi^2 u for u = sin(pi x), so R_lambda sin = sin/(lambda + pi^2).
    auto m = Measure::lebesgue();
    auto f = kf::GridFunction::sample(kf::uniform_grid(513),
                                      [](double x) { return std::sin(M_PI * x); });
    double lam = M_PI * M_PI;  // makes the factor exactly 1/(2 pi^2)
    auto u = kf::apply_resolvent(m, Boundary::Dirichlet, lam, f);
    for (std::size_t i = 0; i < u.size(); ++i) {
        double x = (*u.grid())[i];
        CHECK(std::abs(u.values()[i] - std::sin(M_PI * x) / (2.0 * M_PI * M_PI)) < 1e-6);
    }
}

TEST_CASE("verify_resolvent certifies solutions and flags wrong ones") {
    auto m = Measure::lebesgue();
    auto f = kf::GridFunction::sample(kf::uniform_grid(513), [](double x) { return x; });
    auto u = kf::apply_resolvent(m, Boundary::Neumann, 1.0, f);
    CHECK(kf::verify_resolvent(m, Boundary::Neumann, 1.0, f, u) < 1e-3);
    // Perturbed candidate has a large residual.
    auto bad = u;
    for (auto& v : bad.values()) v *= 1.1;
    CHECK(kf::verify_resolvent(m, Boundary::Neumann, 1.0, f, bad) > 1e-2);

    auto c3 = Measure::cantor_approx(0.5, 0.5, 3);
    auto g = kf::GridFunction::sample(kf::make_grid(c3, 513),
                                      [](double x) { return std::cos(M_PI * x); });
    auto uc = kf::apply_resolvent(c3, Boundary::Neumann, 2.0, g);
    CHECK(kf::verify_resolvent(c3, Boundary::Neumann, 2.0, g, uc) < 5e-2);
}

TEST_CASE("markov contraction lambda R_lambda") {
    oracles::Rng rng(2024);
    auto grid = kf::uniform_grid(129);
    std::vector<double> vals;
    for (std::size_t i = 0; i < grid->size(); ++i) vals.push_back(rng.uniform());
    kf::GridFunction f(grid, vals);
    for (const auto& m : {Measure::lebesgue(), Measure::cantor(0.5, 0.5)}) {
        for (double lam : {0.5, 2.0, 50.0}) {
            auto u = kf::apply_resolvent(m, Boundary::Neumann, lam, f);
            CHECK(lam * u.sup_norm() <= f.sup_norm() * (1.0 + 1e-8));
            // Positivity preserving.
            for (double v : u.values()) CHECK(v >= -1e-12);
            auto ud = kf::apply_resolvent(m, Boundary::Dirichlet, lam, f);
            CHECK(lam * ud.sup_norm() <= f.sup_norm() * (1.0 + 1e-8));
            for (double v : ud.values()) CHECK(v >= -1e-12);
        }
    }
}

TEST_CASE("normalizer dominates lambda") {
    // dcosh_z(1) >= z^2 for every measure: the kernel denominator never
    // degenerates and rho is bounded by 1/lambda on the diagonal scale.
    for (const auto& m : {Measure::lebesgue(), Measure::cantor(0.3, 0.7),
                          Measure::cantor_approx(0.5, 0.5, 2)}) {
        for (double lam : {0.5, 1.0, 4.0, 25.0}) {
            auto rho = kf::resolvent_density(m, Boundary::Neumann, lam);
            CHECK(rho.normalizer >= lam * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("resolvent error bound arithmetic") {
    // lambda = 1: Neumann (1/1 + 2e + 4)e^2 d, Dirichlet (2e + 4)·1·e^2 d.
    double d = 1.0 / 12.0;
    double e = std::exp(1.0), e2 = std::exp(2.0);
    CHECK(kf::resolvent_error_bound(1.0, Boundary::Neumann, d) ==
          doctest::Approx((1.0 + 2.0 * e + 4.0) * e2 * d).epsilon(1e-12));
    CHECK(kf::resolvent_error_bound(1.0, Boundary::Dirichlet, d) ==
          doctest::Approx((2.0 * e + 4.0) * e2 * d).epsilon(1e-12));
    // Scaling in lambda.
    double e4 = std::exp(4.0), e8 = std::exp(8.0);
    CHECK(kf::resolvent_error_bound(4.0, Boundary::Dirichlet, d) ==
          doctest::Approx((2.0 * e4 + 4.0) * 4.0 * e8 * d).epsilon(1e-12));
    CHECK_THROWS_AS(kf::resolvent_error_bound(-1.0, Boundary::Neumann, d), kf::ConfigError);
}

TEST_CASE("resolvent operator reuse matches one-shot application") {
    auto m = Measure::cantor_approx(0.3, 0.7, 2);
    auto grid = kf::make_grid(m, 257);
    kf::ResolventOperator op(m, Boundary::Dirichlet, 3.0, grid);
    auto f = kf::GridFunction::sample(grid, [](double x) { return std::sin(M_PI * x); });
    auto u1 = op.apply(f);
    auto u2 = kf::apply_resolvent(m, Boundary::Dirichlet, 3.0, f, grid);
    CHECK(kf::sup_distance(u1, u2) < 1e-13);
    CHECK(op.lambda() == 3.0);
    CHECK(op.bc() == Boundary::Dirichlet);
}

TEST_CASE("cantor resolvent is self-consistent across grids") {
    auto m = Measure::cantor(0.5, 0.5);
    auto f = kf::GridFunction::sample(kf::make_grid(m, 129), [](double x) { return x; });
    auto coarse = kf::apply_resolvent(m, Boundary::Neumann, 1.0, f, kf::make_grid(m, 257));
    auto fine = kf::apply_resolvent(m, Boundary::Neumann, 1.0, f, kf::make_grid(m, 2049));
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        double x = i / 100.0;
        worst = std::max(worst, std::abs(coarse(x) - fine(x)));
    }
    CHECK(worst < 1e-5);
}
