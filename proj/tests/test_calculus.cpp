#include <cmath>

#include "doctest.h"
#include "kf/calculus.hpp"
#include "kf/errors.hpp"
#include "kf/measure.hpp"
#include "kf/quadrature.hpp"
#include "oracles.hpp"

using kf::Measure;

TEST_CASE("lebesgue monomials reduce to x^k/k!") {
    auto m = Measure::lebesgue();
    auto grid = kf::make_grid(m, 1025);
    auto tbl = kf::monomial_table(m, 10, grid);
    for (int k = 0; k <= 10; ++k) {
        double fk = oracles::factorial(k);
        for (std::size_t i = 0; i < grid->size(); ++i) {
            double x = (*grid)[i];
            double exact = std::pow(x, k) / fk;
            CHECK(std::abs(tbl.p[k][i] - exact) < 1e-9);
            CHECK(std::abs(tbl.q[k][i] - exact) < 1e-9);
        }
    }
}

TEST_CASE("first monomials have closed forms for any measure") {
    for (const auto& m : {Measure::cantor(0.5, 0.5), Measure::cantor(0.3, 0.7),
                          Measure::mixture(Measure::cantor(0.5, 0.5), 0.2)}) {
        auto grid = kf::make_grid(m, 513);
        auto tbl = kf::monomial_table(m, 2, grid);
        for (std::size_t i = 0; i < grid->size(); ++i) {
            double x = (*grid)[i];
            CHECK(tbl.p[1][i] == doctest::Approx(m.cdf(x)).epsilon(1e-10));  // p_1 = F
            CHECK(tbl.q[1][i] == doctest::Approx(x).epsilon(1e-12));         // q_1 = x
        }
    }
    // q_2(1) = mean of the measure; the self-similar fixed point gives
    // E = w2 for a cantor(w1,w2) measure.
    for (auto [w1, w2] : {std::pair{0.5, 0.5}, std::pair{0.3, 0.7}}) {
        auto m = Measure::cantor(w1, w2);
        auto tbl = kf::monomial_table(m, 2, kf::make_grid(m, 257));
        CHECK(tbl.q[2].back() == doctest::Approx(w2).epsilon(1e-5));
        // p_2(1) = int F dx = 1 - mean.
        CHECK(tbl.p[2].back() == doctest::Approx(1.0 - w2).epsilon(1e-5));
    }
}

TEST_CASE("monomial estimates p_{2k+1} <= p_{2k} <= x^k/k!") {
    for (const auto& m : {Measure::lebesgue(), Measure::cantor(0.3, 0.7),
                          Measure::cantor_approx(0.5, 0.5, 3)}) {
        auto grid = kf::make_grid(m, 257);
        auto tbl = kf::monomial_table(m, 9, grid);
        for (int k = 0; 2 * k + 1 <= 9; ++k) {
            double fk = oracles::factorial(k);
            for (std::size_t i = 0; i < grid->size(); ++i) {
                double x = (*grid)[i];
                double cap = std::pow(x, k) / fk;
                CHECK(tbl.p[2 * k + 1][i] <= tbl.p[2 * k][i] + 1e-12);
                CHECK(tbl.p[2 * k][i] <= cap + 1e-10);
                CHECK(tbl.q[2 * k + 1][i] <= tbl.p[2 * k][i] + 1e-10);
            }
        }
    }
}

TEST_CASE("truncation order is certified against a high-precision tail") {
    for (double z : {0.5, 1.0, 2.0, 4.0, 10.0}) {
        for (double tol : {1e-8, 1e-12}) {
            int k = kf::truncation_order(z, tol);
            CHECK(oracles::exp_tail(z, k) < tol);
            if (k > 0) CHECK(oracles::exp_tail(z, k - 1) >= tol * 0.999);
        }
    }
    CHECK(kf::truncation_order(0.0, 1e-12) == 0);
    CHECK_THROWS_AS(kf::truncation_order(1.0, 0.0), kf::ConfigError);
    CHECK_THROWS_AS(kf::truncation_order(30.0, 1e-10), kf::NumericalError);
}

TEST_CASE("lebesgue hyperbolic functions match the classical ones") {
    auto m = Measure::lebesgue();
    auto grid = kf::make_grid(m, 1025);
    for (double z : {0.5, 2.0, 4.0}) {
        auto h = kf::hyperbolic(m, z, grid);
        for (std::size_t i = 0; i < grid->size(); ++i) {
            double x = (*grid)[i];
            CHECK(std::abs(h.cosh_z.values()[i] - std::cosh(z * x)) < 1e-8);
            CHECK(std::abs(h.sinh_z.values()[i] - std::sinh(z * x)) < 1e-8);
            CHECK(std::abs(h.dcosh_z.values()[i] - z * std::sinh(z * x)) < 1e-7);
            CHECK(std::abs(h.dsinh_z.values()[i] - z * std::cosh(z * x)) < 1e-7);
        }
        CHECK(h.tail_bound < 1e-10);
    }
}

TEST_CASE("lebesgue trig functions match cos and sin") {
    auto m = Measure::lebesgue();
    auto grid = kf::make_grid(m, 513);
    double z = 3.0;
    auto t = kf::trig(m, z, grid);
    for (std::size_t i = 0; i < grid->size(); ++i) {
        double x = (*grid)[i];
        CHECK(std::abs(t.cos_z.values()[i] - std::cos(z * x)) < 1e-8);
        CHECK(std::abs(t.sin_z.values()[i] - std::sin(z * x)) < 1e-8);
        CHECK(std::abs(t.dcos_z.values()[i] + z * std::sin(z * x)) < 1e-7);
        CHECK(std::abs(t.dsin_z.values()[i] - z * std::cos(z * x)) < 1e-7);
    }
}

TEST_CASE("sup-norm estimates for generalized hyperbolic functions") {
    for (const auto& m : {Measure::cantor(0.5, 0.5), Measure::cantor(0.3, 0.7),
                          Measure::mixture(Measure::cantor(0.5, 0.5), 0.3)}) {
        auto grid = kf::make_grid(m, 257);
        for (double z : {0.5, 1.0, 2.0}) {
            auto h = kf::hyperbolic(m, z, grid);
            CHECK(h.cosh_z.sup_norm() <= std::exp(z * z) + 1e-9);
            CHECK(h.sinh_z.sup_norm() <= z * std::exp(z * z) + 1e-9);
            // cosh starts at 1 with zero derivative, sinh at 0 with slope z.
            CHECK(h.cosh_z.values().front() == doctest::Approx(1.0));
            CHECK(h.dcosh_z.values().front() == doctest::Approx(0.0));
            CHECK(h.sinh_z.values().front() == doctest::Approx(0.0));
            CHECK(h.dsinh_z.values().front() == doctest::Approx(z).epsilon(1e-10));
        }
    }
}

TEST_CASE("generalized hyperbolic functions solve the eigenvalue equation") {
    // d/dmu d/dx cosh_z = z^2 cosh_z, checked with the difference-quotient
    // operator (an evaluation path independent of the series recursion).
    auto m = Measure::cantor(0.5, 0.5);
    double z = 1.5;
    auto h = kf::hyperbolic(m, z, kf::make_grid(m, 513));
    auto samples = kf::apply_krein_feller(m, h.cosh_z, 1e-3);
    REQUIRE(samples.x.size() > 50);
    for (std::size_t i = 0; i < samples.x.size(); ++i) {
        double expected = z * z * h.cosh_z(samples.x[i]);
        CHECK(std::abs(samples.value[i] - expected) < 0.15 * z * z * h.cosh_z.sup_norm());
    }
}

TEST_CASE("difference-quotient operator recovers classical second derivatives") {
    auto m = Measure::lebesgue();
    auto grid = kf::uniform_grid(1001);
    auto f = kf::GridFunction::sample(grid, [](double x) { return x * x; });
    auto s = kf::apply_krein_feller(m, f, 1e-3);
    REQUIRE(!s.x.empty());
    for (double v : s.value) CHECK(v == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("stieltjes quadrature integrates against singular measures") {
    auto cantor = Measure::cantor(0.5, 0.5);
    auto grid = kf::uniform_grid(257);
    auto one = kf::GridFunction::sample(grid, [](double) { return 1.0; });
    auto id = kf::GridFunction::sample(grid, [](double x) { return x; });
    CHECK(kf::integrate(cantor, one, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(kf::integrate(cantor, id, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(kf::integrate(cantor, one, 1.0 / 3.0 + 1e-9, 2.0 / 3.0 - 1e-9, 1e-8) ==
          doctest::Approx(0.0).epsilon(1e-10));
    auto leb = Measure::lebesgue();
    auto sq = kf::GridFunction::sample(kf::uniform_grid(2049), [](double x) { return x * x; });
    CHECK(kf::integrate(leb, sq, 0.0, 1.0, 1e-9) == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
}

TEST_CASE("series order bookkeeping") {
    auto m = Measure::cantor(0.5, 0.5);
    auto h = kf::hyperbolic(m, 2.0, kf::make_grid(m, 129), 1e-10);
    CHECK(h.order == kf::truncation_order(2.0, 1e-10 / 8.0));
    CHECK(h.tail_bound >= 0.0);
    CHECK(h.tail_bound < 1e-10);
}
