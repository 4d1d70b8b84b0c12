#include "dce/regimes.hpp"

#include "dce/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace dce {

namespace {

// Relative width of a condition's equality set.
constexpr double kBoundaryTol = 1e-12;
// Re(lambda) below this fraction of the coupling scale is reported as 0.
constexpr double kGrowthClamp = 1e-7;
// Relative closeness of lambda^2 values that marks a repeated root.
constexpr double kRepeatedTol = 1e-9;

struct SquaredRoots {
    Complex big;
    Complex small;
};

// Roots mu of mu^2 + 2 C mu + D = 0, i.e. mu = A +- 2 sqrt(disc) with
// A = -C, computed without cancellation via mu_big * mu_small = D.
SquaredRoots squared_roots(const Couplings& c)
{
    const double b2 = c.beta * c.beta;
    const double g2 = c.g * c.g;
    const double k2 = c.kappa * c.kappa;
    const double a = 2.0 * b2 - k2 - g2;
    const double disc = b2 * b2 - b2 * g2 + g2 * k2;
    const Complex root_disc = std::sqrt(Complex(disc, 0.0));
    const Complex plus = a + 2.0 * root_disc;
    const Complex minus = a - 2.0 * root_disc;
    SquaredRoots out;
    out.big = std::abs(plus) >= std::abs(minus) ? plus : minus;
    const double d = (k2 - g2) * (k2 - g2) - 4.0 * k2 * b2;
    out.small = std::abs(out.big) > 0.0 ? Complex(d, 0.0) / out.big : Complex(0.0, 0.0);
    return out;
}

}  // namespace

Complex CharacteristicPolynomial::evaluate(Complex lambda) const
{
    const Complex l2 = lambda * lambda;
    return l2 * l2 + 2.0 * c * l2 + d;
}

CharacteristicPolynomial characteristic_polynomial(const Couplings& c)
{
    const double b2 = c.beta * c.beta;
    const double g2 = c.g * c.g;
    const double k2 = c.kappa * c.kappa;
    return {k2 + g2 - 2.0 * b2, (k2 - g2) * (k2 - g2) - 4.0 * k2 * b2};
}

std::array<Complex, 4> characteristic_lambdas(const Couplings& c)
{
    const SquaredRoots mu = squared_roots(c);
    const Complex r1 = std::sqrt(mu.big);
    const Complex r2 = std::sqrt(mu.small);
    return {r1, -r1, r2, -r2};
}

RegimeVerdict generation_verdict(const Couplings& c)
{
    RegimeVerdict v;
    v.lambdas = characteristic_lambdas(c);

    const double scale = c.scale();
    const double s2 = scale * scale;
    const double s4 = s2 * s2;
    const double b2 = c.beta * c.beta;
    const double g2 = c.g * c.g;
    const double k2 = c.kappa * c.kappa;

    const double v1 = k2 + g2 - 2.0 * b2;
    const double v2 = b2 * b2 - b2 * g2 + g2 * k2;
    const double v3 = (k2 - g2) * (k2 - g2) - 4.0 * k2 * b2;
    v.cond1 = v1 >= -kBoundaryTol * s2;
    v.cond2 = v2 >= -kBoundaryTol * s4;
    v.cond3 = v3 >= -kBoundaryTol * s4;
    v.generation_possible = !(v.cond1 && v.cond2 && v.cond3);

    double rate = 0.0;
    for (const Complex& l : v.lambdas) {
        rate = std::max(rate, l.real());
    }
    v.growth_rate = rate < kGrowthClamp * scale ? 0.0 : rate;

    if (v.growth_rate == 0.0) {
        const SquaredRoots mu = squared_roots(c);
        const double tol = kRepeatedTol * s2;
        const bool zero_root = std::abs(mu.small) <= tol || std::abs(mu.big) <= tol;
        const bool repeated = std::abs(mu.big - mu.small) <= tol;
        v.marginal = zero_root || repeated;
    }
    return v;
}

std::vector<RasterCell> region_raster(double beta, Range kappa_range, Range g_range, std::size_t nx, std::size_t ny,
                                      unsigned threads)
{
    if (!(beta != 0.0) || !std::isfinite(beta)) {
        throw InputError("region_raster: beta must be finite and nonzero");
    }
    if (!std::isfinite(kappa_range.min) || !std::isfinite(kappa_range.max) || !std::isfinite(g_range.min) ||
        !std::isfinite(g_range.max)) {
        throw InputError("region_raster: ranges must be finite");
    }
    if (nx < 2 || ny < 2) {
        throw InputError("region_raster: nx and ny must be at least 2");
    }

    std::vector<RasterCell> cells(nx * ny);
    const double dk = (kappa_range.max - kappa_range.min) / static_cast<double>(nx - 1);
    const double dg = (g_range.max - g_range.min) / static_cast<double>(ny - 1);
    const double abs_beta = std::abs(beta);

    auto fill_row = [&](std::size_t row) {
        const double gy = g_range.min + static_cast<double>(row) * dg;
        for (std::size_t col = 0; col < nx; ++col) {
            const double kx = kappa_range.min + static_cast<double>(col) * dk;
            const RegimeVerdict v = generation_verdict({beta, beta * gy, beta * kx});
            cells[row * nx + col] = {kx, gy, v.generation_possible, v.growth_rate / abs_beta, v.marginal};
        }
    };

    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, ny));
    if (workers <= 1) {
        for (std::size_t row = 0; row < ny; ++row) {
            fill_row(row);
        }
        return cells;
    }

    std::atomic<std::size_t> next_row{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t row = next_row++; row < ny; row = next_row++) {
                fill_row(row);
            }
        });
    }
    pool.clear();
    return cells;
}

}  // namespace dce
