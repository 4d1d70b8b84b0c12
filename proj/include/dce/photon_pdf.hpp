#pragma once

#include "dce/model.hpp"
#include "dce/observables.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace dce {

// Photon-number probabilities f(0..m_max) of the field mode.
struct PhotonDistribution {
    std::vector<double> probs;
    std::size_t m_max = 0;
    double tail = 0.0;               // 1 - sum(probs)
    double imag_residue = 0.0;       // largest |Im| discarded from complex evaluation
    double min_before_clip = 0.0;    // most negative value seen before clipping
};

// Values at or above this are clipped to zero; anything lower is reported
// through min_before_clip and still clipped.
inline constexpr double kNegativeClip = -1e-12;
inline constexpr std::size_t kMaxPhotonIndex = 1'000'000;

// P_0(z) .. P_{m_max}(z) by the three-term recurrence. Throws
// LegendreOverflow when a value leaves the double range; use
// scaled_legendre_sequence() for large arguments.
std::vector<Complex> legendre_sequence(Complex z, std::size_t m_max);

// r^m P_m(z) for m = 0..m_max. With z r and r^2 bounded the sequence stays
// finite even when z itself is huge or infinite-in-the-limit.
std::vector<Complex> scaled_legendre_sequence(Complex z_times_r, Complex r_squared, std::size_t m_max);

// ceil(8 (<n> + 1)), capped at kMaxPhotonIndex.
std::size_t default_photon_cutoff(double n_mean);

// Exact Gaussian distribution
//   f(m) = 2 D-^{m/2} / D+^{(m+1)/2} P_m((4 Delta - 1) / sqrt(D+ D-)).
// With no m_max the series runs to at least default_photon_cutoff() and
// then on until the tail drops below 1e-10.
// Throws NonPhysicalSummary if D+ <= 0.
PhotonDistribution pdf_exact(const GaussianSummary& summary, std::optional<std::size_t> m_max = std::nullopt);

// Squeezed vacuum: f(2k) = n^k (2k)! / [(1+n)^{k+1/2} (2^k k!)^2], f(odd) = 0.
PhotonDistribution pdf_squeezed_vacuum(double n_mean, std::size_t m_max);

// Closed form for kappa = g (beta << g):
//   f(m) = (i z)^m sqrt(1 - 3 z^2) P_m(-i z),  z = tanh(bt) / sqrt(4 - tanh^2(bt)).
PhotonDistribution pdf_closed_kappa_g(double beta_t, std::size_t m_max);

// Large-m asymptotic of the kappa = g distribution (m >= 1).
double pdf_asymptotic_kappa_g(double beta_t, std::size_t m);

// Smooth law exp[-(2m+1)/(4n)] / sqrt(pi n (2m+1)), n > 0.
double pdf_smooth_approx(double n_mean, std::size_t m);

}  // namespace dce
