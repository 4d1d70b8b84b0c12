#include <doctest.h>

#include "dce/errors.hpp"
#include "dce/propagator.hpp"
#include "dce/regimes.hpp"

#include <cmath>
#include <random>

using namespace dce;

TEST_CASE("empty cavity always generates")
{
    const auto v = generation_verdict({1e-3, 0.0, 0.0});
    CHECK(v.generation_possible);
    CHECK_FALSE(v.cond1);
    CHECK(v.growth_rate == doctest::Approx(2e-3));
    CHECK_FALSE(v.marginal);
}

TEST_CASE("detuning cutoff at kappa = 2 beta")
{
    const double beta = 2.5e-4;
    CHECK(generation_verdict({beta, 0.0, 1.999 * beta}).generation_possible);
    CHECK_FALSE(generation_verdict({beta, 0.0, 2.001 * beta}).generation_possible);

    const auto edge = generation_verdict({beta, 0.0, 2.0 * beta});
    CHECK_FALSE(edge.generation_possible);
    CHECK(edge.marginal);
    CHECK(edge.growth_rate == 0.0);
}

TEST_CASE("resonances")
{
    const auto eq = generation_verdict({1e-3, 1e-2, 1e-2});
    CHECK(eq.generation_possible);
    CHECK_FALSE(eq.cond3);
    CHECK(eq.growth_rate == doctest::Approx(1e-3).epsilon(1e-2));

    const auto zero = generation_verdict({1e-3, 1e-2, 0.0});
    CHECK(zero.generation_possible);
    CHECK(zero.growth_rate == doctest::Approx(1e-3).epsilon(1e-2));

    // Far off resonance nothing grows.
    CHECK_FALSE(generation_verdict({1e-3, 1e-2, 5e-2}).generation_possible);
}

TEST_CASE("all couplings zero")
{
    const auto v = generation_verdict({0.0, 0.0, 0.0});
    CHECK_FALSE(v.generation_possible);
    CHECK(v.cond1);
    CHECK(v.cond2);
    CHECK(v.cond3);
    CHECK(v.growth_rate == 0.0);
    CHECK(v.marginal);
}

TEST_CASE("lambdas solve the characteristic quartic")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const Couplings cp{c(rng), c(rng), c(rng)};
        const auto poly = characteristic_polynomial(cp);
        const double s4 = std::pow(cp.scale(), 4);
        for (const auto& l : characteristic_lambdas(cp)) {
            CHECK(std::abs(poly.evaluate(l)) < 1e-12 * s4);
        }
    }
}

TEST_CASE("verdict growth rate equals the drift spectrum")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const Couplings cp{c(rng), c(rng), c(rng)};
        const auto v = generation_verdict(cp);
        const double rate = drift_growth_rate(build_drift_matrix(cp));
        CHECK(v.growth_rate == doctest::Approx(rate).scale(cp.scale()).epsilon(1e-6));
        CHECK(v.generation_possible == (rate > 1e-6 * cp.scale()));
    }
}

TEST_CASE("verdict symmetries")
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const Couplings cp{c(rng), c(rng), c(rng)};
        const auto v = generation_verdict(cp);
        for (const Couplings& f : {Couplings{-cp.beta, cp.g, cp.kappa}, Couplings{cp.beta, -cp.g, cp.kappa},
                                   Couplings{cp.beta, cp.g, -cp.kappa}}) {
            const auto w = generation_verdict(f);
            CHECK(w.generation_possible == v.generation_possible);
            CHECK(w.growth_rate == doctest::Approx(v.growth_rate));
        }
        const double s = 37.5;
        const auto scaled = generation_verdict({s * cp.beta, s * cp.g, s * cp.kappa});
        CHECK(scaled.generation_possible == v.generation_possible);
        CHECK(scaled.growth_rate == doctest::Approx(s * v.growth_rate));
    }
}

TEST_CASE("region raster")
{
    const double beta = 2.0;
    const auto cells = region_raster(beta, {-4.0, 4.0}, {0.0, 4.0}, 41, 21, 3);
    REQUIRE(cells.size() == 41 * 21);
    CHECK(cells.front().kappa == -4.0);
    CHECK(cells.front().g == 0.0);
    CHECK(cells[40].kappa == 4.0);
    CHECK(cells.back().g == 4.0);
    for (const auto& cell : cells) {
        const auto v = generation_verdict({beta, beta * cell.g, beta * cell.kappa});
        CHECK(cell.possible == v.generation_possible);
        CHECK(cell.growth_rate == doctest::Approx(v.growth_rate / beta));
        CHECK(cell.marginal == v.marginal);
    }
    const auto single = region_raster(beta, {-4.0, 4.0}, {0.0, 4.0}, 41, 21, 1);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        CHECK(single[i].possible == cells[i].possible);
        CHECK(single[i].growth_rate == cells[i].growth_rate);
    }
}

TEST_CASE("region raster input errors")
{
    CHECK_THROWS_AS(region_raster(0.0, {-1, 1}, {0, 1}, 4, 4), InputError);
    CHECK_THROWS_AS(region_raster(1.0, {-1, 1}, {0, 1}, 1, 4), InputError);
    CHECK_THROWS_AS(region_raster(1.0, {-1, std::nan("")}, {0, 1}, 4, 4), InputError);
}
