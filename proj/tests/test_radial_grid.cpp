#include "ctc/errors.hpp"
#include "ctc/field.hpp"
#include "ctc/radial_grid.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace ctc;
using std::numbers::pi;

TEST_CASE("grid geometry matches ball volumes") {
    SUBCASE("unit disk, n=2") {
        auto g = make_grid(2, 1.0, 10);
        CHECK(g->volumes().sum() == doctest::Approx(pi).epsilon(1e-12));
        CHECK(g->ball_volume() == doctest::Approx(pi).epsilon(1e-14));
    }
    SUBCASE("ball of radius 2, n=3") {
        auto g = make_grid(3, 2.0, 16);
        CHECK(g->volumes().sum() == doctest::Approx(32.0 * pi / 3.0).epsilon(1e-12));
    }
    SUBCASE("uniform faces, n=5") {
        auto g = make_grid(5, 1.0, 8);
        for (int j = 0; j <= 8; ++j) CHECK(g->faces()[j] == doctest::Approx(j / 8.0).epsilon(1e-15));
        CHECK(g->faces()[0] == 0.0);
        CHECK(g->faces()[8] == 1.0);
    }
    SUBCASE("centers sit strictly between faces") {
        auto g = make_grid(4, 1.5, 12);
        for (int i = 0; i < 12; ++i) {
            CHECK(g->centers()[i] > g->faces()[i]);
            CHECK(g->centers()[i] < g->faces()[i + 1]);
        }
    }
}

TEST_CASE("grid construction rejects bad parameters") {
    CHECK_THROWS_AS(make_grid(1, 1.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 0.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, -1.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 1.0, 7), std::invalid_argument);
}

TEST_CASE("volume telescoping holds for every valid grid") {
    for (int n : {2, 3, 4, 5, 7}) {
        for (int m : {8, 33, 256}) {
            auto g = make_grid(n, 1.7, m);
            CHECK(std::abs(g->volumes().sum() - g->ball_volume()) <= 1e-12 * g->ball_volume());
        }
    }
}

TEST_CASE("integrate: constants, zero, and a monomial oracle") {
    auto g = make_grid(2, 1.0, 64);
    CHECK(integrate(*g, Array::Constant(64, 1.0)) == doctest::Approx(pi).epsilon(1e-13));
    CHECK(integrate(*g, Array::Zero(64)) == 0.0);

    // f(r) = r^2 in n=3: exact value 4*pi/5 (analytic integral as oracle).
    auto g3a = make_grid(3, 1.0, 64);
    auto g3b = make_grid(3, 1.0, 128);
    const double exact = 4.0 * pi / 5.0;
    const double e1 = std::abs(integrate(*g3a, g3a->centers().square()) - exact);
    const double e2 = std::abs(integrate(*g3b, g3b->centers().square()) - exact);
    CHECK(e1 <= 1e-3 * exact);
    CHECK(std::log2(e1 / e2) >= 1.9);
}

TEST_CASE("integrate rejects length mismatch") {
    auto g = make_grid(2, 1.0, 16);
    CHECK_THROWS_AS(integrate(*g, Array::Zero(15)), GridMismatch);
}

TEST_CASE("integrate is linear") {
    auto g = make_grid(3, 1.0, 128);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    Array f(128), w(128);
    for (int i = 0; i < 128; ++i) {
        f[i] = dist(rng);
        w[i] = dist(rng);
    }
    const double a = 1.7, b = -0.3;
    const double combined = integrate(*g, a * f + b * w);
    const double split = a * integrate(*g, f) + b * integrate(*g, w);
    CHECK(std::abs(combined - split) <= 1e-13 * (std::abs(combined) + 1.0));
}

TEST_CASE("refinement order of the quadrature on cos r") {
    // n=2, R=1: 2*pi int_0^1 r cos r dr = 2*pi (cos 1 + sin 1 - 1).
    const double exact = 2.0 * pi * (std::cos(1.0) + std::sin(1.0) - 1.0);
    auto err = [&](int m) {
        auto g = make_grid(2, 1.0, m);
        return std::abs(integrate(*g, g->centers().cos()) - exact);
    };
    CHECK(std::log2(err(64) / err(128)) >= 1.9);
}

TEST_CASE("fields carry their grid") {
    auto g = make_grid(2, 1.0, 16);
    auto f = make_field(g, [](double r) { return r * r; });
    CHECK(integrate(f) == doctest::Approx(pi / 2.0).epsilon(5e-3));
    auto other = make_field(make_grid(2, 1.0, 32), 1.0);
    CHECK_THROWS_AS(require_same_grid(f, other, "test"), GridMismatch);
    CHECK_THROWS_AS(make_field(g, Array::Zero(5)), GridMismatch);
}
