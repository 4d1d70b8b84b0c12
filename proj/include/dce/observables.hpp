#pragma once

#include "dce/model.hpp"
#include "dce/propagator.hpp"

#include <optional>

namespace dce {

// Second moments of the field (a) and detector (b) modes for the
// two-mode vacuum evolved by a BogoliubovMap.
struct FieldMoments {
    double n_a = 0.0;    // <a^+ a>
    double n_b = 0.0;    // <b^+ b>
    Complex a_sq{};      // <a^2> in the physical (non-tilde) frame
    double time = 0.0;
    // Covariance determinant computed directly from the map. When absent,
    // gaussian_summary() derives it from n_a and |a_sq|, which loses
    // relative accuracy ~ eps <n>^2 / Delta.
    std::optional<double> delta;
};

// Phase-space summary of the single-mode Gaussian state of the field.
struct GaussianSummary {
    double delta = 0.25;     // determinant of the quadrature covariance matrix
    double tau = 1.0;        // sigma_xx + sigma_pp = 1 + 2<n>
    double q_mandel = 0.0;
    double squeeze_s = 1.0;  // twice the minimal quadrature variance
    double sigma_xx = 0.5;
    double sigma_pp = 0.5;
    double sigma_xp = 0.0;

    // Set when <n> = 0 and q_mandel holds the 0 sentinel instead of a
    // value of the 0/0 Mandel expression.
    bool q_undefined = false;

    [[nodiscard]] double mean_photons() const { return 0.5 * (tau - 1.0); }
    [[nodiscard]] double d_plus() const { return 1.0 + 4.0 * delta + 2.0 * tau; }
    [[nodiscard]] double d_minus() const { return 1.0 + 4.0 * delta - 2.0 * tau; }
    // Smaller eigenvalue of the covariance matrix, equal to S / 2.
    [[nodiscard]] double sigma_min() const { return 0.5 * squeeze_s; }
};

// <a^2> picks up the frame phase e^{2 i kappa t} using map.kappa.
FieldMoments field_moments(const BogoliubovMap& map);

// Moments at time t starting from the two-mode vacuum: propagate + field_moments.
FieldMoments moments_at(const Couplings& c, double t);

// Throws NonPhysicalSummary for negative <n> or Delta below 1/4 beyond
// round-off, NegativeDiscriminant when tau^2 < 4 Delta.
GaussianSummary gaussian_summary(const FieldMoments& moments);

}  // namespace dce
