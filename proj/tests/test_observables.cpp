#include <doctest.h>

#include "dce/errors.hpp"
#include "dce/observables.hpp"
#include "dce/validation.hpp"
#include "fock_reference.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace dce;

TEST_CASE("vacuum summary")
{
    const auto s = gaussian_summary(FieldMoments{});
    CHECK(s.delta == doctest::Approx(0.25));
    CHECK(s.tau == 1.0);
    CHECK(s.squeeze_s == doctest::Approx(1.0));
    CHECK(s.sigma_xx == doctest::Approx(0.5));
    CHECK(s.sigma_pp == doctest::Approx(0.5));
    CHECK(s.q_undefined);
    CHECK(s.q_mandel == 0.0);
    CHECK(s.d_minus() == doctest::Approx(0.0));
    CHECK(s.d_plus() == doctest::Approx(4.0));
}

TEST_CASE("empty cavity moments and quadratures")
{
    const double eps = 1e-3;
    const double t = 1500.0;
    const auto m = moments_at({eps / 4.0, 0.0, 0.0}, t);
    const double r = eps * t / 2.0;
    CHECK(m.n_a == doctest::Approx(std::sinh(r) * std::sinh(r)).epsilon(1e-12));
    CHECK(m.n_b == doctest::Approx(0.0));
    CHECK(std::abs(m.a_sq) == doctest::Approx(std::sinh(r) * std::cosh(r)).epsilon(1e-12));

    const auto s = gaussian_summary(m);
    CHECK_FALSE(s.q_undefined);
    CHECK(s.delta == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(s.q_mandel == doctest::Approx(1.0 + 2.0 * m.n_a).epsilon(1e-10));
    CHECK(s.squeeze_s == doctest::Approx(std::exp(-eps * t)).epsilon(1e-10));
    CHECK(s.sigma_xx == doctest::Approx(0.5 * std::exp(eps * t)).epsilon(1e-10));
    CHECK(s.sigma_pp == doctest::Approx(0.5 * std::exp(-eps * t)).epsilon(1e-10));
}

TEST_CASE("S is twice the smaller covariance eigenvalue")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> c(-0.05, 0.05);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 25; ++k) {
        const Couplings cp{c(rng), c(rng), c(rng)};
        const auto s = gaussian_summary(moments_at(cp, u(rng) * 3.0 / cp.scale()));
        const double mean = 0.5 * (s.sigma_xx + s.sigma_pp);
        const double half = 0.5 * (s.sigma_xx - s.sigma_pp);
        const double lmin = mean - std::hypot(half, s.sigma_xp);
        CHECK(s.sigma_min() == doctest::Approx(lmin).epsilon(1e-9));
        CHECK(s.squeeze_s == doctest::Approx(2.0 * lmin).epsilon(1e-9));
        // The product side cancels to ~ eps tau^2.
        CHECK(std::abs(s.sigma_xx * s.sigma_pp - s.sigma_xp * s.sigma_xp - s.delta) < 1e-13 * s.tau * s.tau);
        CHECK(s.delta >= 0.25 - 1e-9);
    }
}

TEST_CASE("S is invariant under quadrature rotation")
{
    const auto m = moments_at({2e-3, 5e-3, -1e-3}, 700.0);
    const auto base = gaussian_summary(m);
    for (double phi : {0.3, 1.7, 2.9, 5.5}) {
        FieldMoments r = m;
        r.a_sq *= std::polar(1.0, phi);
        const auto rot = gaussian_summary(r);
        CHECK(rot.squeeze_s == doctest::Approx(base.squeeze_s).epsilon(1e-10));
        CHECK(rot.delta == doctest::Approx(base.delta).epsilon(1e-12));
        CHECK(rot.q_mandel == doctest::Approx(base.q_mandel).epsilon(1e-12));
    }
}

TEST_CASE("observables do not depend on the sign of g")
{
    const Couplings c{1e-3, 7e-3, 2e-3};
    const auto p = moments_at(c, 3000.0);
    const auto n = moments_at({c.beta, -c.g, c.kappa}, 3000.0);
    CHECK(p.n_a == doctest::Approx(n.n_a).epsilon(1e-12));
    CHECK(p.n_b == doctest::Approx(n.n_b).epsilon(1e-12));
    CHECK(std::abs(p.a_sq - n.a_sq) < 1e-12 * std::abs(p.a_sq));
}

TEST_CASE("moments agree with a truncated Fock-space simulation")
{
    const Couplings c{0.1, 0.15, 0.05};
    const double t = 3.0;
    const auto ref = fock::simulate(c, t);
    const auto map = propagate(build_drift_matrix(c), t);
    const auto m = field_moments(map);
    CHECK(m.n_a == doctest::Approx(ref.n_a).epsilon(1e-8));

    const Complex frame = std::polar(1.0, 2.0 * c.kappa * t);
    CHECK(std::abs(m.a_sq - frame * ref.a_sq_tilde) < 1e-8);

    const auto s = gaussian_summary(m);
    const double q_ref = (ref.n_a_sq - ref.n_a * ref.n_a - ref.n_a) / ref.n_a;
    CHECK(s.q_mandel == doctest::Approx(q_ref).epsilon(1e-7));
    CHECK(validation::wick_second_moment(map) == doctest::Approx(ref.n_a_sq).epsilon(1e-8));
}

TEST_CASE("unphysical moments are rejected")
{
    FieldMoments bad;
    bad.n_a = 1.0;
    bad.a_sq = {5.0, 0.0};
    CHECK_THROWS_AS(gaussian_summary(bad), NonPhysicalSummary);

    FieldMoments negative;
    negative.n_a = -0.5;
    CHECK_THROWS_AS(gaussian_summary(negative), NonPhysicalSummary);
    CHECK_THROWS_AS(gaussian_summary(bad), NumericalError);
}

TEST_CASE("pure states sit on Delta = 1/4")
{
    // |<a^2>|^2 = n (n + 1) up to round-off: snapped, never rejected.
    FieldMoments m;
    m.n_a = 12.345;
    m.a_sq = std::polar(std::sqrt(m.n_a * (m.n_a + 1.0)) * (1.0 + 1e-16), 0.7);
    const auto s = gaussian_summary(m);
    CHECK(s.delta == doctest::Approx(0.25));
    CHECK(s.q_mandel == doctest::Approx(1.0 + 2.0 * m.n_a));
}
