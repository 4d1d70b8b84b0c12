#include "dce/photon_pdf.hpp"

#include "dce/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dce {

namespace {

constexpr double kAdaptiveTail = 1e-10;

// Advances q_m = r^m P_m(z) one index at a time.
class ScaledLegendre {
public:
    ScaledLegendre(Complex z_times_r, Complex r_squared) : zr_(z_times_r), r2_(r_squared) {}

    [[nodiscard]] Complex current() const { return cur_; }

    void advance()
    {
        Complex next;
        if (m_ == 0) {
            next = zr_;
        } else {
            const double m = static_cast<double>(m_);
            next = ((2.0 * m + 1.0) * zr_ * cur_ - m * r2_ * prev_) / (m + 1.0);
        }
        prev_ = cur_;
        cur_ = next;
        ++m_;
    }

private:
    Complex zr_;
    Complex r2_;
    Complex prev_{0.0, 0.0};
    Complex cur_{1.0, 0.0};
    std::size_t m_ = 0;
};

void push_probability(PhotonDistribution& dist, double value)
{
    if (value < 0.0) {
        dist.min_before_clip = std::min(dist.min_before_clip, value);
        value = 0.0;
    }
    dist.probs.push_back(value);
}

void finish(PhotonDistribution& dist)
{
    dist.m_max = dist.probs.empty() ? 0 : dist.probs.size() - 1;
    double sum = 0.0;
    for (double p : dist.probs) {
        sum += p;
    }
    dist.tail = 1.0 - sum;
}

std::size_t minimum_cutoff(double n_mean)
{
    const double m = std::ceil(8.0 * (std::max(n_mean, 0.0) + 1.0));
    return static_cast<std::size_t>(std::min(m, static_cast<double>(kMaxPhotonIndex)));
}

}  // namespace

std::vector<Complex> legendre_sequence(Complex z, std::size_t m_max)
{
    std::vector<Complex> p;
    p.reserve(m_max + 1);
    p.emplace_back(1.0, 0.0);
    if (m_max >= 1) {
        p.push_back(z);
    }
    for (std::size_t m = 1; m < m_max; ++m) {
        const double md = static_cast<double>(m);
        const Complex next = ((2.0 * md + 1.0) * z * p[m] - md * p[m - 1]) / (md + 1.0);
        if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) {
            throw LegendreOverflow("legendre_sequence: P_" + std::to_string(m + 1) +
                                   " overflows for |z| = " + std::to_string(std::abs(z)));
        }
        p.push_back(next);
    }
    return p;
}

std::vector<Complex> scaled_legendre_sequence(Complex z_times_r, Complex r_squared, std::size_t m_max)
{
    std::vector<Complex> q;
    q.reserve(m_max + 1);
    ScaledLegendre gen(z_times_r, r_squared);
    q.push_back(gen.current());
    for (std::size_t m = 0; m < m_max; ++m) {
        gen.advance();
        q.push_back(gen.current());
    }
    return q;
}

std::size_t default_photon_cutoff(double n_mean)
{
    return minimum_cutoff(n_mean);
}

PhotonDistribution pdf_exact(const GaussianSummary& summary, std::optional<std::size_t> m_max)
{
    const double d_plus = summary.d_plus();
    const double d_minus = summary.d_minus();
    if (!(d_plus > 0.0) || !std::isfinite(d_plus)) {
        throw NonPhysicalSummary("pdf_exact: D+ = " + std::to_string(d_plus) + " must be positive");
    }
    const double excess = 4.0 * summary.delta - 1.0;

    // f(m) = (2 / sqrt(D+)) r^m P_m(z) with r = sqrt(D-) / sqrt(D+) on the
    // principal branch; only z r and r^2 enter the recurrence.
    const double root_plus = std::sqrt(d_plus);
    const Complex root_minus = std::sqrt(Complex(d_minus, 0.0));
    const Complex r = root_minus / root_plus;
    Complex zr;
    if (std::abs(root_minus) > 0.0) {
        const Complex z = excess / (root_plus * root_minus);
        zr = z * r;
    } else {
        zr = Complex(excess / d_plus, 0.0);
    }
    const Complex r2 = r * r;
    const double prefactor = 2.0 / root_plus;

    PhotonDistribution dist;
    ScaledLegendre gen(zr, r2);
    double sum = 0.0;
    const std::size_t floor_m = m_max ? *m_max : minimum_cutoff(summary.mean_photons());
    for (std::size_t m = 0;; ++m) {
        const Complex value = prefactor * gen.current();
        dist.imag_residue = std::max(dist.imag_residue, std::abs(value.imag()));
        push_probability(dist, value.real());
        sum += dist.probs.back();
        if (m_max) {
            if (m >= *m_max) {
                break;
            }
        } else if ((m >= floor_m && 1.0 - sum < kAdaptiveTail) || m >= kMaxPhotonIndex) {
            break;
        }
        gen.advance();
    }
    finish(dist);
    return dist;
}

PhotonDistribution pdf_squeezed_vacuum(double n_mean, std::size_t m_max)
{
    PhotonDistribution dist;
    const double n = std::max(n_mean, 0.0);
    const double ratio = n / (1.0 + n);
    double even = 1.0 / std::sqrt(1.0 + n);
    dist.probs.reserve(m_max + 1);
    for (std::size_t m = 0; m <= m_max; ++m) {
        if (m % 2 == 1) {
            dist.probs.push_back(0.0);
            continue;
        }
        if (m > 0) {
            const double k = static_cast<double>(m / 2);
            even *= ratio * (2.0 * k - 1.0) / (2.0 * k);
        }
        dist.probs.push_back(even);
    }
    finish(dist);
    return dist;
}

PhotonDistribution pdf_closed_kappa_g(double beta_t, std::size_t m_max)
{
    const double th = std::tanh(beta_t);
    const double z = th / std::sqrt(4.0 - th * th);
    // Legendre argument -i z with scale i z.
    const Complex arg(0.0, -z);
    const Complex scale(0.0, z);
    const double root = std::sqrt(std::max(0.0, 1.0 - 3.0 * z * z));

    PhotonDistribution dist;
    dist.probs.reserve(m_max + 1);
    ScaledLegendre gen(arg * scale, scale * scale);
    for (std::size_t m = 0; m <= m_max; ++m) {
        const Complex value = root * gen.current();
        dist.imag_residue = std::max(dist.imag_residue, std::abs(value.imag()));
        push_probability(dist, value.real());
        gen.advance();
    }
    finish(dist);
    return dist;
}

double pdf_asymptotic_kappa_g(double beta_t, std::size_t m)
{
    const double th = std::tanh(beta_t);
    const double md = static_cast<double>(m);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double first = std::pow(th / (2.0 - th), md) / std::sqrt(2.0 - th);
    const double second = sign * std::pow(th / (2.0 + th), md) / std::sqrt(2.0 + th);
    return (first + second) / (std::cosh(beta_t) * std::sqrt(std::numbers::pi * (md + 0.5)));
}

double pdf_smooth_approx(double n_mean, std::size_t m)
{
    const double w = 2.0 * static_cast<double>(m) + 1.0;
    return std::exp(-w / (4.0 * n_mean)) / std::sqrt(std::numbers::pi * n_mean * w);
}

}  // namespace dce
