#include <doctest.h>

#include "dce/errors.hpp"
#include "dce/propagator.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <vector>

using namespace dce;

namespace {

// Classical RK4 integration of U' = M U, used as an independent reference.
Matrix4c rk4(const Matrix4c& m, double t, double h)
{
    const auto steps = static_cast<long>(std::ceil(t / h));
    const double dt = t / static_cast<double>(steps);
    Matrix4c u = Matrix4c::Identity();
    for (long k = 0; k < steps; ++k) {
        const Matrix4c k1 = m * u;
        const Matrix4c k2 = m * (u + 0.5 * dt * k1);
        const Matrix4c k3 = m * (u + 0.5 * dt * k2);
        const Matrix4c k4 = m * (u + dt * k3);
        u += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return u;
}

double max_abs_eigenvalue(const Matrix4c& m)
{
    return Eigen::ComplexEigenSolver<Matrix4c>(m, false).eigenvalues().cwiseAbs().maxCoeff();
}

double max_diff(const Matrix4c& a, const Matrix4c& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("zero time and zero couplings give the identity")
{
    const auto drift = build_drift_matrix(Couplings{1e-3, 2e-3, 0.5e-3});
    const auto map = propagate(drift, 0.0);
    CHECK(map.matrix == Matrix4c::Identity());
    CHECK(propagate(build_drift_matrix(Couplings{}), 123.0).matrix == Matrix4c::Identity());
}

TEST_CASE("empty cavity map is a real hyperbolic rotation")
{
    const double eps = 1e-3;
    const double t = 1000.0;
    const auto map = propagate(build_drift_matrix(validate_params(eps, 0.0, 0.0)), t);
    CHECK(map.matrix(0, 0).real() == doctest::Approx(std::cosh(eps * t / 2.0)).epsilon(1e-12));
    CHECK(map.matrix(0, 2).real() == doctest::Approx(std::sinh(eps * t / 2.0)).epsilon(1e-12));
    CHECK(std::abs(map.matrix(1, 1) - 1.0) < 1e-14);
}

TEST_CASE("propagator agrees with an RK4 integration")
{
    SUBCASE("resonant point")
    {
        const Matrix4c m = build_drift_matrix(Couplings{0.0025, 0.025, 0.0}).entries;
        const double t = 400.0;
        const Matrix4c ref = rk4(m, t, 1e-3 / max_abs_eigenvalue(m));
        CHECK(max_diff(propagate({m}, t).matrix, ref) < 1e-6);
    }
    SUBCASE("random points")
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> c(-0.05, 0.05);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int k = 0; k < 10; ++k) {
            const Couplings cp{c(rng), c(rng), c(rng)};
            const Matrix4c m = build_drift_matrix(cp).entries;
            const double t = u(rng) * 4.0 / cp.scale();
            const Matrix4c ref = rk4(m, t, 2e-3 / max_abs_eigenvalue(m));
            const Matrix4c got = propagate({m}, t).matrix;
            CHECK(max_diff(got, ref) / std::max(1.0, ref.cwiseAbs().maxCoeff()) < 1e-8);
        }
    }
}

TEST_CASE("both exponential routes agree")
{
    const Matrix4c m = build_drift_matrix(Couplings{0.01, 0.03, -0.02}).entries;
    const double t = 70.0;
    const auto eig = detail::expm_eigen(m, t);
    REQUIRE(eig.ok);
    const Matrix4c pade = detail::expm_pade13(m * t);
    CHECK(max_diff(eig.value, pade) < 1e-11 * pade.cwiseAbs().maxCoeff());
}

TEST_CASE("defective drift falls back to scaling and squaring")
{
    // kappa = 2 beta, g = 0 is the detuning cutoff: a Jordan block.
    const double beta = 1e-3;
    const Matrix4c m = build_drift_matrix(Couplings{beta, 0.0, 2.0 * beta}).entries;
    const double t = 500.0;
    const auto map = propagate({m}, t);
    CHECK(std::isfinite(map.matrix.cwiseAbs().maxCoeff()));
    CHECK(symplectic_defect(map) < 1e-10);
    // |B_aa|^2 grows as (2 beta t)^2 on the cutoff.
    CHECK(std::norm(map.matrix(0, 2)) == doctest::Approx(std::pow(2.0 * beta * t, 2)).epsilon(1e-8));
}

TEST_CASE("maps preserve the commutators")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        const Couplings cp{c(rng), c(rng), c(rng)};
        const auto map = propagate(build_drift_matrix(cp), 3.0);
        CHECK(symplectic_defect(map) < 1e-11);
    }
}

TEST_CASE("conjugate rows mirror the operator rows")
{
    const auto u = propagate(build_drift_matrix(Couplings{0.02, -0.01, 0.015}), 250.0).matrix;
    const double tol = 1e-13 * u.cwiseAbs().maxCoeff();
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            CHECK(std::abs(u(r + 2, c + 2) - std::conj(u(r, c))) < tol);
            CHECK(std::abs(u(r + 2, c) - std::conj(u(r, c + 2))) < tol);
        }
    }
}

TEST_CASE("semigroup property")
{
    const auto drift = build_drift_matrix(Couplings{0.004, 0.01, 0.003});
    const Matrix4c whole = propagate(drift, 700.0).matrix;
    const Matrix4c split = propagate(drift, 300.0).matrix * propagate(drift, 400.0).matrix;
    CHECK(max_diff(whole, split) < 1e-10 * whole.cwiseAbs().maxCoeff());
}

TEST_CASE("evolve_series matches direct propagation")
{
    const Couplings c{2.5e-4, 1e-2, 1e-2};
    std::vector<double> uniform;
    for (int k = 0; k <= 100; ++k) {
        uniform.push_back(50.0 * k);
    }
    const auto maps = evolve_series(c, uniform);
    REQUIRE(maps.size() == uniform.size());
    const auto direct = propagate(build_drift_matrix(c), uniform.back());
    CHECK(max_diff(maps.back().matrix, direct.matrix) < 1e-9 * direct.matrix.cwiseAbs().maxCoeff());
    CHECK(maps.back().time == uniform.back());

    const std::vector<double> ragged{0.0, 1.0, 10.0, 1000.0};
    const auto rmaps = evolve_series(c, ragged);
    CHECK(max_diff(rmaps[2].matrix, propagate(build_drift_matrix(c), 10.0).matrix) < 1e-13);
}

TEST_CASE("propagation errors")
{
    const auto drift = build_drift_matrix(Couplings{0.1, 0.0, 0.0});
    CHECK_THROWS_AS(propagate(drift, -1.0), InputError);
    CHECK_THROWS_AS(propagate(drift, std::nan("")), InputError);
    // growth rate 0.2, 0.2 * 2000 = 400 > 300
    CHECK_THROWS_AS(propagate(drift, 2000.0), OverflowRisk);
    CHECK_NOTHROW(propagate(drift, 1400.0));

    const Couplings c{1e-3, 0.0, 0.0};
    const std::vector<double> decreasing{0.0, 2.0, 1.0};
    const std::vector<double> negative{-1.0, 0.0};
    CHECK_THROWS_AS(evolve_series(c, decreasing), InputError);
    CHECK_THROWS_AS(evolve_series(c, negative), InputError);
}

TEST_CASE("drift growth rate")
{
    CHECK(drift_growth_rate(build_drift_matrix(Couplings{1e-3, 0.0, 0.0})) == doctest::Approx(2e-3));
    CHECK(drift_growth_rate(build_drift_matrix(Couplings{1e-3, 0.0, 3e-3})) < 1e-12);
}
