#pragma once

#include "dce/model.hpp"
#include "dce/photon_pdf.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace dce::oracles {

// Closed-form special cases of the field/detector model, used as
// independent references for the numerical pipeline.
enum class OracleTag { empty_cavity, detuned_empty, kappa_eq_g, kappa_zero, all_equal };

struct OracleRegime {
    OracleTag tag;
    std::string_view validity;  // human-readable domain of the closed form
};

OracleRegime regime_info(OracleTag tag);

// Machine-checkable validity predicate; total over all inputs.
bool is_valid(OracleTag tag, const Couplings& c, double t);

std::string_view to_string(OracleTag tag);

// g = kappa = 0: n = sinh^2(eps t / 2), Q = 1 + 2n, sigma_pp = e^{-eps t} / 2,
// sigma_xx = e^{eps t} / 2.
struct EmptyCavity {
    double n = 0.0;
    double q = 1.0;
    double sigma_xx = 0.5;
    double sigma_pp = 0.5;
    bool q_is_limit = false;  // t = 0: Q = 1 is the t -> 0 limit
};
EmptyCavity empty_cavity(double epsilon, double t);

// g = 0 with detuning: (eps^2/4) / (eps^2/4 - kappa^2) sinh^2(t sqrt(eps^2/4 - kappa^2)),
// continued to the oscillating branch and to the (eps t / 2)^2 degenerate limit.
double detuned_empty(double epsilon, double kappa, double t);

// Resonance kappa = g with |beta| << |g|.
struct KappaEqG {
    double n_a = 0.0;
    double n_b = 0.0;
    double delta = 0.25;
    double q = 0.5;
    double sigma_xx = 0.5;
    double sigma_pp = 0.5;
    double sigma_xp = 0.0;
    double sigma_min = 0.5;
    PhotonDistribution f_closed;
    bool valid = true;
};
KappaEqG kappa_eq_g(double beta, double g, double t, std::size_t m_max = 40);

// Zero detuning with |g| >> |beta|, late times (beta t >= 2).
// f_even[m] is f(2m); odd_even_ratio[m] is f(2m+1) / f(2m).
struct KappaZero {
    double gamma = 0.0;  // sqrt(g^2 - beta^2)
    double n_asymptotic = 0.0;
    std::vector<double> f_even;
    std::vector<double> odd_even_ratio;
    bool valid = true;
};
// Throws GammaImaginary when |g| <= |beta|.
KappaZero kappa_zero(double beta, double g, double t, std::size_t m_count = 50);

// beta = kappa = g, exact in x = sqrt(2) beta t.
struct AllEqual {
    double x = 0.0;
    double n = 0.0;
    double four_delta_minus_1 = 0.0;
    double d_plus = 4.0;
    double d_minus = 0.0;
    std::vector<double> f_approx;  // smooth law at the exact <n>
    // Late-time range of the minimal quadrature variance S / 2.
    std::pair<double, double> sigma_min_bounds{1.0 / 12.0, 1.0 / 6.0};
    double xi = 0.0;         // (sin x - cos x)^2
    double s_large_x = 0.0;  // (1 - xi / 4) / 3, the x >> 1 form of S
};
AllEqual all_equal(double beta, double t, std::size_t m_max = 40);

}  // namespace dce::oracles
