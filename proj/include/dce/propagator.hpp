#pragma once

#include "dce/model.hpp"

#include <span>
#include <vector>

namespace dce {

// U(t) = exp(M t): maps the initial operators (a0, b0, a0^+, b0^+) to the
// tilde-frame operators at time t. Row 0 reads
//   a~(t) = A_aa a0 + A_ab b0 + B_aa a0^+ + B_ab b0^+
// and row 1 likewise for b~(t). Rows 2 and 3 are the Hermitian conjugates.
struct BogoliubovMap {
    Matrix4c matrix = Matrix4c::Identity();
    double time = 0.0;
    double kappa = 0.0;  // detuning of the tilde frame the map is expressed in
};

// Rates above this product of growth rate and time are refused.
inline constexpr double kMaxGrowthExponent = 300.0;

// Eigenvector condition number above which exp(Mt) switches from
// diagonalization to scaling and squaring.
inline constexpr double kEigenConditionLimit = 1e6;

// Throws InputError for negative or non-finite t and OverflowRisk when
// growth_rate * t > 300.
BogoliubovMap propagate(const DriftMatrix& drift, double t);

// Batch propagation over a strictly increasing grid with grid[0] >= 0.
// Uniform grids are advanced with U(t + dt) = U(dt) U(t).
std::vector<BogoliubovMap> evolve_series(const ModelParams& params, std::span<const double> t_grid);
std::vector<BogoliubovMap> evolve_series(const Couplings& couplings, std::span<const double> t_grid);

// Max-norm of U J U^+ - J, J = diag(1, 1, -1, -1), relative to
// max(1, largest row norm squared of U). Zero for an exact map.
double symplectic_defect(const BogoliubovMap& map);

// Largest real part among the eigenvalues of the drift matrix.
double drift_growth_rate(const DriftMatrix& drift);

namespace detail {

// Both exponential routes, exposed for cross-checking.
Matrix4c expm_pade13(const Matrix4c& a);

struct EigenExpm {
    Matrix4c value;
    double condition = 0.0;  // 1-norm condition number of the eigenvector matrix
    bool ok = false;
};
EigenExpm expm_eigen(const Matrix4c& m, double t);

}  // namespace detail

}  // namespace dce
