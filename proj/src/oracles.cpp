#include "dce/oracles.hpp"

#include "dce/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dce::oracles {

OracleRegime regime_info(OracleTag tag)
{
    switch (tag) {
    case OracleTag::empty_cavity:
        return {tag, "g = 0 and kappa = 0; exact for all t"};
    case OracleTag::detuned_empty:
        return {tag, "g = 0; exact for all t and kappa"};
    case OracleTag::kappa_eq_g:
        return {tag, "kappa = g, |beta| <= |g| / 10 and (beta t)(beta / g) <= 0.1"};
    case OracleTag::kappa_zero:
        return {tag, "kappa = 0, |g| >= 10 |beta| and beta t >= 2"};
    case OracleTag::all_equal:
        return {tag, "beta = kappa = g; exact for all t"};
    }
    return {tag, ""};
}

std::string_view to_string(OracleTag tag)
{
    switch (tag) {
    case OracleTag::empty_cavity:
        return "empty_cavity";
    case OracleTag::detuned_empty:
        return "detuned_empty";
    case OracleTag::kappa_eq_g:
        return "kappa_eq_g";
    case OracleTag::kappa_zero:
        return "kappa_zero";
    case OracleTag::all_equal:
        return "all_equal";
    }
    return "unknown";
}

bool is_valid(OracleTag tag, const Couplings& c, double t)
{
    if (!std::isfinite(t) || t < 0.0) {
        return false;
    }
    const double b = std::abs(c.beta);
    const double g = std::abs(c.g);
    switch (tag) {
    case OracleTag::empty_cavity:
        return c.g == 0.0 && c.kappa == 0.0;
    case OracleTag::detuned_empty:
        return c.g == 0.0;
    case OracleTag::kappa_eq_g:
        return c.kappa == c.g && g > 0.0 && b <= 0.1 * g && b * t * (b / g) <= 0.1;
    case OracleTag::kappa_zero:
        return c.kappa == 0.0 && g >= 10.0 * b && b * t >= 2.0;
    case OracleTag::all_equal:
        return c.beta == c.kappa && c.beta == c.g;
    }
    return false;
}

EmptyCavity empty_cavity(double epsilon, double t)
{
    EmptyCavity r;
    const double sh = std::sinh(0.5 * epsilon * t);
    r.n = sh * sh;
    r.q = 1.0 + 2.0 * r.n;
    r.sigma_xx = 0.5 * std::exp(epsilon * t);
    r.sigma_pp = 0.5 * std::exp(-epsilon * t);
    r.q_is_limit = (t == 0.0);
    return r;
}

double detuned_empty(double epsilon, double kappa, double t)
{
    const double pump = 0.25 * epsilon * epsilon;
    const double rate2 = pump - kappa * kappa;
    const double s = rate2 * t * t;
    if (std::abs(s) < 1e-8) {
        // sinh^2(t sqrt(r)) / r = t^2 (1 + r t^2 / 3 + ...)
        return pump * t * t * (1.0 + s / 3.0);
    }
    if (rate2 > 0.0) {
        const double sh = std::sinh(t * std::sqrt(rate2));
        return pump / rate2 * sh * sh;
    }
    const double sn = std::sin(t * std::sqrt(-rate2));
    return pump / (-rate2) * sn * sn;
}

KappaEqG kappa_eq_g(double beta, double g, double t, std::size_t m_max)
{
    KappaEqG r;
    r.valid = is_valid(OracleTag::kappa_eq_g, {beta, g, g}, t);
    const double bt = beta * t;
    const double ch = std::cosh(bt);
    const double sh = std::sinh(bt);
    r.n_a = 0.5 * sh * sh;
    r.n_b = r.n_a;
    r.delta = 0.25 * ch * ch;
    r.q = 0.5 * std::cosh(2.0 * bt);
    const double c2 = std::cos(2.0 * g * t);
    r.sigma_xx = 0.5 * ch * (ch + sh * c2);
    r.sigma_pp = 0.5 * ch * (ch - sh * c2);
    r.sigma_xp = 0.5 * ch * sh * std::sin(2.0 * g * t);
    r.sigma_min = 0.25 * (1.0 + std::exp(-2.0 * bt));
    r.f_closed = pdf_closed_kappa_g(std::abs(bt), m_max);
    return r;
}

KappaZero kappa_zero(double beta, double g, double t, std::size_t m_count)
{
    if (std::abs(g) <= std::abs(beta)) {
        throw GammaImaginary("kappa_zero: needs |g| > |beta| (beta=" + std::to_string(beta) +
                             ", g=" + std::to_string(g) + ")");
    }
    KappaZero r;
    r.valid = is_valid(OracleTag::kappa_zero, {beta, g, 0.0}, t);
    r.gamma = std::sqrt(g * g - beta * beta);
    const double bt = beta * t;
    const double gt = r.gamma * t;
    const double sg = std::sin(gt);
    r.n_asymptotic = 0.25 * std::exp(2.0 * bt) *
                     (1.0 + beta / r.gamma * std::sin(2.0 * gt) + 2.0 * beta * beta / (r.gamma * r.gamma) * sg * sg);

    const double th2 = std::tanh(bt) * std::tanh(bt);
    const double sg4 = sg * sg * sg * sg;
    const double sinh2 = std::sinh(2.0 * bt);
    double power = 1.0 / std::cosh(bt);  // tanh^{2m}(bt) / cosh(bt)
    double dfact = 1.0;                   // (2m-1)!! / (2m)!!
    r.f_even.reserve(m_count + 1);
    r.odd_even_ratio.reserve(m_count + 1);
    for (std::size_t m = 0; m <= m_count; ++m) {
        const double md = static_cast<double>(m);
        if (m > 0) {
            power *= th2;
            dfact *= (2.0 * md - 1.0) / (2.0 * md);
        }
        r.f_even.push_back(power * dfact);
        r.odd_even_ratio.push_back(2.0 * (2.0 * md + 1.0) * beta * beta * sg4 / (g * g * sinh2));
    }
    return r;
}

AllEqual all_equal(double beta, double t, std::size_t m_max)
{
    AllEqual r;
    const double x = std::numbers::sqrt2 * beta * t;
    r.x = x;
    const double ch = std::cosh(x);
    const double sh = std::sinh(x);
    const double c = std::cos(x);
    const double s = std::sin(x);
    r.n = 0.5 * (1.0 + 3.0 * sh * sh + sh * s - ch * c);
    const double cross = ch * s - sh * c;
    const double cross2 = 0.5 * cross * cross;
    r.four_delta_minus_1 = 2.0 * ch * ch - 2.0 * (sh * s + ch * c) - cross2;
    r.d_plus = 8.0 * ch * ch - 4.0 * ch * c - cross2;
    r.d_minus = -4.0 * sh * sh - 4.0 * sh * s - cross2;
    r.xi = (s - c) * (s - c);
    r.s_large_x = (1.0 - r.xi / 4.0) / 3.0;

    r.f_approx.reserve(m_max + 1);
    for (std::size_t m = 0; m <= m_max; ++m) {
        if (r.n > 0.0) {
            r.f_approx.push_back(pdf_smooth_approx(r.n, m));
        } else {
            r.f_approx.push_back(m == 0 ? 1.0 : 0.0);
        }
    }
    return r;
}

}  // namespace dce::oracles
