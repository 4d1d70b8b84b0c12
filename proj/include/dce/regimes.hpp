#pragma once

#include "dce/model.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace dce {

// Classification of one (beta, g, kappa) point.
//
// Photon generation is impossible when all three inequalities hold:
//   cond1: kappa^2 + g^2 > 2 beta^2
//   cond2: beta^4 - beta^2 g^2 + g^2 kappa^2 > 0
//   cond3: (kappa^2 - g^2)^2 > 4 kappa^2 beta^2
// A condition sitting on its equality (to relative 1e-12) counts as
// holding: the boundary has no exponential growth.
struct RegimeVerdict {
    std::array<Complex, 4> lambdas{};
    bool cond1 = true;
    bool cond2 = true;
    bool cond3 = true;
    bool generation_possible = false;
    double growth_rate = 0.0;  // max Re(lambda), clamped to 0 below tolerance
    // No exponential growth but a repeated zero or imaginary lambda, so
    // the dynamics can still grow polynomially.
    bool marginal = false;
};

// The characteristic quartic lambda^4 + 2 C lambda^2 + D = 0.
struct CharacteristicPolynomial {
    double c = 0.0;  // kappa^2 + g^2 - 2 beta^2
    double d = 0.0;  // (kappa^2 - g^2)^2 - 4 kappa^2 beta^2
    [[nodiscard]] Complex evaluate(Complex lambda) const;
};

CharacteristicPolynomial characteristic_polynomial(const Couplings& c);

// lambda = +-sqrt(2 beta^2 - kappa^2 - g^2 +- 2 sqrt(beta^4 - beta^2 g^2 + g^2 kappa^2)),
// principal complex roots, ordered (+,+), (-,+), (+,-), (-,-).
std::array<Complex, 4> characteristic_lambdas(const Couplings& c);

RegimeVerdict generation_verdict(const Couplings& c);

// Row-major raster over kappa (columns, fastest) and g (rows). Ranges and
// outputs are in units of beta: the point (kx, gy) is evaluated at
// kappa = beta kx, g = beta gy, and growth rates are divided by |beta|.
struct RasterCell {
    double kappa = 0.0;  // kappa / beta
    double g = 0.0;      // g / beta
    bool possible = false;
    double growth_rate = 0.0;  // growth_rate / |beta|
    bool marginal = false;
};

struct Range {
    double min = 0.0;
    double max = 0.0;
};

// Throws InputError when beta == 0, a range is non-finite, or nx, ny < 2.
// Rows are evaluated concurrently on up to `threads` workers (0 = hardware).
std::vector<RasterCell> region_raster(double beta, Range kappa_range, Range g_range, std::size_t nx, std::size_t ny,
                                      unsigned threads = 0);

}  // namespace dce
