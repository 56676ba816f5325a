#include <cmath>

#include "doctest.h"
#include "kf/errors.hpp"
#include "kf/measure.hpp"
#include "oracles.hpp"

using kf::Measure;

TEST_CASE("lebesgue cdf is the identity") {
    auto m = Measure::lebesgue();
    CHECK(m.cdf(0.0) == 0.0);
    CHECK(m.cdf(1.0) == 1.0);
    CHECK(m.cdf(0.37) == doctest::Approx(0.37).epsilon(1e-15));
    CHECK_THROWS_AS(m.cdf(1.5), kf::ConfigError);
    CHECK_THROWS_AS(m.cdf(-0.1), kf::ConfigError);
}

// The Cantor CDF is the unique bounded monotone solution of the IFS
// functional equation; verifying the equation at many points is an oracle
// independent of how the CDF is evaluated internally.
TEST_CASE("cantor cdf satisfies the self-similarity functional equation") {
    for (auto [w1, w2] : {std::pair{0.5, 0.5}, std::pair{0.3, 0.7}}) {
        auto m = Measure::cantor(w1, w2);
        CHECK(m.cdf(0.0) == 0.0);
        CHECK(m.cdf(1.0) == 1.0);
        oracles::Rng rng(12345);
        for (int i = 0; i < 500; ++i) {
            double x = rng.uniform();
            double f = m.cdf(x);
            CHECK(m.cdf(x / 3.0) == doctest::Approx(w1 * f).epsilon(1e-12));
            CHECK(m.cdf(2.0 / 3.0 + x / 3.0) == doctest::Approx(w1 + w2 * f).epsilon(1e-12));
        }
        // Plateau on the middle-third gap.
        CHECK(m.cdf(0.4) == doctest::Approx(w1).epsilon(1e-14));
        CHECK(m.cdf(0.6) == doctest::Approx(w1).epsilon(1e-14));
    }
}

TEST_CASE("cantor cdf is monotone") {
    auto m = Measure::cantor(0.3, 0.7);
    double prev = 0.0;
    for (int i = 1; i <= 2000; ++i) {
        double f = m.cdf(i / 2000.0);
        CHECK(f >= prev);
        prev = f;
    }
}

TEST_CASE("cantor_approx is exact at ternary cell boundaries and linear inside") {
    auto exact = Measure::cantor(0.5, 0.5);
    auto appr = Measure::cantor_approx(0.5, 0.5, 2);
    // Level-2 boundaries carry the exact weight products.
    CHECK(appr.cdf(1.0 / 9.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(appr.cdf(1.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(appr.cdf(2.0 / 3.0 + 1.0 / 9.0) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(appr.cdf(1.0 / 9.0) == doctest::Approx(exact.cdf(1.0 / 9.0)).epsilon(1e-14));
    // Inside a level-2 cell the mass is uniform: midpoint value is the mean.
    double a = appr.cdf(0.0), b = appr.cdf(1.0 / 9.0);
    CHECK(appr.cdf(0.5 / 9.0) == doctest::Approx(0.5 * (a + b)).epsilon(1e-12));
    CHECK(appr.has_density());
    CHECK_FALSE(exact.has_density());
}

TEST_CASE("mixture cdf is the convex formula") {
    auto base = Measure::cantor(0.5, 0.5);
    auto m = Measure::mixture(base, 1.0);
    CHECK(m.cdf(0.5) == doctest::Approx(0.5).epsilon(1e-14));  // (0.5 + 0.5)/2
    auto m2 = Measure::mixture(base, 0.25);
    oracles::Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        double x = rng.uniform();
        CHECK(m2.cdf(x) ==
              doctest::Approx((base.cdf(x) + 0.25 * x) / 1.25).epsilon(1e-13));
    }
    CHECK_THROWS_AS(Measure::mixture(base, 0.0), kf::ConfigError);
}

TEST_CASE("quantile inverts the cdf") {
    for (const auto& m :
         {Measure::lebesgue(), Measure::mixture(Measure::cantor(0.5, 0.5), 0.1),
          Measure::cantor_approx(0.3, 0.7, 3)}) {
        oracles::Rng rng(42);
        for (int i = 0; i < 100; ++i) {
            double p = rng.uniform();
            CHECK(m.cdf(m.quantile(p)) == doctest::Approx(p).epsilon(1e-9));
        }
    }
    // On the pure Cantor measure the quantile lands in the support.
    auto c = Measure::cantor(0.5, 0.5);
    double q = c.quantile(0.5);
    CHECK(c.cdf(q) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("support gaps of the cantor measure") {
    auto m = Measure::cantor(0.5, 0.5);
    auto gaps = m.support_gaps(0.2);
    REQUIRE(gaps.size() == 1);
    CHECK(gaps[0].lo == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(gaps[0].hi == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    // Down to width 3^-3 there are 1 + 2 + 4 = 7 gaps.
    CHECK(m.support_gaps(1.0 / 27.0).size() == 7);
    // Mass of every gap is zero (up to float placement of the endpoints).
    for (const auto& g : m.support_gaps(1e-3)) {
        CHECK(m.mass(g.lo, g.hi) < 1e-9);
    }
    CHECK(Measure::lebesgue().support_gaps(1e-3).empty());
}

TEST_CASE("reflection flips the distribution function") {
    auto m = Measure::cantor(0.3, 0.7);
    auto r = m.reflected();
    oracles::Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        double x = rng.uniform();
        CHECK(r.cdf(x) == doctest::Approx(1.0 - m.cdf(1.0 - x)).epsilon(1e-12));
    }
    auto mix = Measure::mixture(m, 0.5).reflected();
    for (int i = 0; i < 50; ++i) {
        double x = rng.uniform();
        CHECK(mix.cdf(x) ==
              doctest::Approx(1.0 - Measure::mixture(m, 0.5).cdf(1.0 - x)).epsilon(1e-12));
    }
}

TEST_CASE("tabulated measures validate their samples") {
    CHECK_THROWS_AS(Measure::tabulated({{0.0, 0.0}}), kf::ConfigError);
    CHECK_THROWS_AS(Measure::tabulated({{0.0, 0.1}, {1.0, 1.0}}), kf::ConfigError);
    CHECK_THROWS_AS(Measure::tabulated({{0.0, 0.0}, {0.5, 0.8}, {0.6, 0.4}, {1.0, 1.0}}),
                    kf::ConfigError);
    auto m = Measure::tabulated({{0.0, 0.0}, {0.25, 0.5}, {0.75, 0.5}, {1.0, 1.0}});
    CHECK(m.cdf(0.125) == doctest::Approx(0.25).epsilon(1e-14));
    auto gaps = m.support_gaps(0.1);
    REQUIRE(gaps.size() == 1);
    CHECK(gaps[0].lo == doctest::Approx(0.25));
    CHECK(gaps[0].hi == doctest::Approx(0.75));
}

TEST_CASE("cdf distance against brute-force refinement") {
    auto leb = Measure::lebesgue();
    auto cantor = Measure::cantor(0.5, 0.5);
    // Brute force on a fine dyadic-and-ternary grid.
    auto brute = [](const Measure& a, const Measure& b) {
        double best = 0.0;
        for (int i = 0; i <= 3 * 6561; ++i) {
            double x = static_cast<double>(i) / (3 * 6561);
            best = std::max(best, std::abs(a.cdf(x) - b.cdf(x)));
        }
        return best;
    };
    // Known value: sup |x - F_cantor(x)| = 1/6, attained at x = 1/3.
    CHECK(kf::cdf_distance(leb, cantor) == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
    CHECK(brute(leb, cantor) == doctest::Approx(1.0 / 6.0).epsilon(1e-6));
    // Level-1 approximation: per-cell scaling halves the distance to 1/12.
    auto a1 = Measure::cantor_approx(0.5, 0.5, 1);
    CHECK(kf::cdf_distance(cantor, a1) == doctest::Approx(1.0 / 12.0).epsilon(1e-9));

    CHECK(kf::cdf_distance(cantor, cantor) == 0.0);
    auto mix = Measure::mixture(cantor, 0.3);
    CHECK(kf::cdf_distance(cantor, mix) ==
          doctest::Approx(kf::cdf_distance(mix, cantor)).epsilon(1e-12));
    CHECK(kf::cdf_distance(cantor, mix) == doctest::Approx(brute(cantor, mix)).epsilon(1e-4));
}

TEST_CASE("cdf distance halves per cantor approximation level") {
    auto limit = Measure::cantor(0.5, 0.5);
    double prev = kf::cdf_distance(limit, Measure::cantor_approx(0.5, 0.5, 1));
    for (int n = 2; n <= 6; ++n) {
        double d = kf::cdf_distance(limit, Measure::cantor_approx(0.5, 0.5, n));
        CHECK(d / prev == doctest::Approx(0.5).epsilon(0.05));
        prev = d;
    }
}

TEST_CASE("describe names the measure") {
    CHECK(Measure::lebesgue().describe() == "lebesgue");
    CHECK(Measure::cantor(0.5, 0.5).describe().find("cantor") != std::string::npos);
    CHECK(Measure::mixture(Measure::lebesgue(), 1.0).describe().find("mixture") !=
          std::string::npos);
}
