#include "dce/observables.hpp"

#include "dce/errors.hpp"

#include <cmath>
#include <string>

namespace dce {

namespace {

// 4 Delta for the field mode, as the sum of squared 2x2 minors of the real
// 2x4 matrix R taking the initial quadratures (x_a, x_b, p_a, p_b) to
// (x, p) of the field: V = R R^T / 2, det(R R^T) = sum of minors^2.
// Every term is non-negative, so nothing cancels however large <n> grows.
double four_delta_from_row(const Matrix4c& u)
{
    double r[2][4];
    for (int j = 0; j < 2; ++j) {
        const Complex c = u(0, j) + u(0, j + 2);                     // x_j coefficient of sqrt(2) a
        const Complex d = Complex(0.0, 1.0) * (u(0, j) - u(0, j + 2));  // p_j coefficient
        r[0][j] = c.real();
        r[1][j] = c.imag();
        r[0][j + 2] = d.real();
        r[1][j + 2] = d.imag();
    }
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const double minor = r[0][i] * r[1][j] - r[0][j] * r[1][i];
            sum += minor * minor;
        }
    }
    return sum;
}

}  // namespace

FieldMoments field_moments(const BogoliubovMap& map)
{
    const Matrix4c& u = map.matrix;
    FieldMoments m;
    m.time = map.time;
    m.n_a = std::norm(u(0, 2)) + std::norm(u(0, 3));
    m.n_b = std::norm(u(1, 2)) + std::norm(u(1, 3));
    const Complex tilde_sq = u(0, 0) * u(0, 2) + u(0, 1) * u(0, 3);
    m.a_sq = tilde_sq * std::polar(1.0, 2.0 * map.kappa * map.time);
    m.delta = 0.25 * four_delta_from_row(u);
    return m;
}

FieldMoments moments_at(const Couplings& c, double t)
{
    return field_moments(propagate(build_drift_matrix(c), t));
}

GaussianSummary gaussian_summary(const FieldMoments& moments)
{
    const double n = moments.n_a;
    const double a2 = std::norm(moments.a_sq);
    if (!std::isfinite(n) || !std::isfinite(a2)) {
        throw NonPhysicalSummary("gaussian_summary: non-finite moments");
    }
    const double scale = (1.0 + 2.0 * n) * (1.0 + 2.0 * n);
    const double round_off = 1e-13 * scale;
    if (n < -round_off) {
        throw NonPhysicalSummary("gaussian_summary: negative photon number " + std::to_string(n));
    }

    GaussianSummary s;
    // 4 Delta - 1. From the map, the error is ~ eps <n>; from (n, |<a^2>|)
    // alone it is ~ eps <n>^2. A pure state has exactly zero here and
    // anything below round-off is snapped.
    double excess = 0.0;
    double snap = round_off;
    if (moments.delta) {
        if (!std::isfinite(*moments.delta)) {
            throw NonPhysicalSummary("gaussian_summary: non-finite Delta");
        }
        excess = 4.0 * *moments.delta - 1.0;
        snap = 1e-13 * (1.0 + 2.0 * n);
    } else {
        excess = 4.0 * (n + n * n - a2);
    }
    if (std::abs(excess) <= snap) {
        excess = 0.0;
    }
    s.delta = 0.25 * (1.0 + excess);
    s.tau = 1.0 + 2.0 * n;

    const double discriminant = s.tau * s.tau - 4.0 * s.delta;
    if (discriminant < -round_off) {
        throw NegativeDiscriminant("gaussian_summary: tau^2 - 4 Delta = " + std::to_string(discriminant));
    }
    if (excess < 0.0) {
        throw NonPhysicalSummary("gaussian_summary: Delta below the vacuum bound 1/4 (4 Delta - 1 = " +
                                 std::to_string(excess) + ")");
    }

    if (n > 0.0) {
        s.q_mandel = 1.0 + 2.0 * n - 0.25 * excess / n;
    } else {
        s.q_mandel = 0.0;
        s.q_undefined = true;
    }

    // tau^2 - 4 Delta equals 4 |<a^2>|^2 identically for these moments.
    s.squeeze_s = 4.0 * s.delta / (s.tau + 2.0 * std::sqrt(a2));
    s.sigma_xx = 0.5 + n + moments.a_sq.real();
    s.sigma_pp = 0.5 + n - moments.a_sq.real();
    s.sigma_xp = moments.a_sq.imag();
    return s;
}

}  // namespace dce
