#include "dce/propagator.hpp"

#include "dce/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace dce {

namespace detail {

Matrix4c expm_pade13(const Matrix4c& a)
{
    // Higham (2005) degree-13 Pade coefficients and its scaling threshold.
    static constexpr std::array<double, 14> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,    33522128640.0,
        1323241920.0,        40840800.0,          960960.0,          16380.0,
        182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;

    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    }
    const Matrix4c x = a / std::ldexp(1.0, squarings);
    const Matrix4c id = Matrix4c::Identity();
    const Matrix4c x2 = x * x;
    const Matrix4c x4 = x2 * x2;
    const Matrix4c x6 = x4 * x2;

    const Matrix4c u_inner = b[13] * x6 + b[11] * x4 + b[9] * x2;
    const Matrix4c u = x * (x6 * u_inner + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id);
    const Matrix4c v_inner = b[12] * x6 + b[10] * x4 + b[8] * x2;
    const Matrix4c v = x6 * v_inner + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

    Matrix4c r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k) {
        r = r * r;
    }
    return r;
}

EigenExpm expm_eigen(const Matrix4c& m, double t)
{
    EigenExpm out;
    Eigen::ComplexEigenSolver<Matrix4c> solver(m, true);
    if (solver.info() != Eigen::Success) {
        return out;
    }
    const Matrix4c& vecs = solver.eigenvectors();
    Eigen::FullPivLU<Matrix4c> lu(vecs);
    if (!lu.isInvertible()) {
        return out;
    }
    const Matrix4c inv = lu.inverse();
    const double n1 = vecs.cwiseAbs().colwise().sum().maxCoeff();
    const double n1_inv = inv.cwiseAbs().colwise().sum().maxCoeff();
    out.condition = n1 * n1_inv;
    if (!std::isfinite(out.condition)) {
        return out;
    }
    Eigen::Matrix<Complex, 4, 1> expd;
    for (int k = 0; k < 4; ++k) {
        expd(k) = std::exp(solver.eigenvalues()(k) * t);
    }
    out.value = vecs * expd.asDiagonal() * inv;
    out.ok = true;
    return out;
}

}  // namespace detail

double drift_growth_rate(const DriftMatrix& drift)
{
    Eigen::ComplexEigenSolver<Matrix4c> solver(drift.entries, false);
    double rate = 0.0;
    for (int k = 0; k < 4; ++k) {
        rate = std::max(rate, solver.eigenvalues()(k).real());
    }
    return rate;
}

BogoliubovMap propagate(const DriftMatrix& drift, double t)
{
    if (!std::isfinite(t) || t < 0.0) {
        throw InputError("propagation time must be finite and non-negative, got " + std::to_string(t));
    }
    BogoliubovMap map;
    map.time = t;
    map.kappa = drift.entries(2, 2).imag();
    if (t == 0.0) {
        return map;
    }
    const double rate = drift_growth_rate(drift);
    if (rate * t > kMaxGrowthExponent) {
        throw OverflowRisk("propagate: growth_rate * t = " + std::to_string(rate * t) +
                           " exceeds " + std::to_string(kMaxGrowthExponent) + " (t=" + std::to_string(t) + ")");
    }
    const auto eig = detail::expm_eigen(drift.entries, t);
    if (eig.ok && eig.condition < kEigenConditionLimit) {
        map.matrix = eig.value;
    } else {
        map.matrix = detail::expm_pade13(drift.entries * t);
    }
    return map;
}

namespace {

void check_grid(std::span<const double> t_grid)
{
    if (t_grid.empty()) {
        return;
    }
    if (!std::isfinite(t_grid.front()) || t_grid.front() < 0.0) {
        throw InputError("time grid must start at t >= 0");
    }
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
        if (!std::isfinite(t_grid[k]) || !(t_grid[k] > t_grid[k - 1])) {
            throw InputError("time grid must be strictly increasing (index " + std::to_string(k) + ")");
        }
    }
}

bool is_uniform(std::span<const double> t_grid)
{
    if (t_grid.size() < 3) {
        return t_grid.size() == 2;
    }
    const double t0 = t_grid.front();
    const double step = (t_grid.back() - t0) / static_cast<double>(t_grid.size() - 1);
    const double tol = 1e-12 * std::max(1.0, std::abs(t_grid.back()));
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        if (std::abs(t_grid[k] - (t0 + static_cast<double>(k) * step)) > tol) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<BogoliubovMap> evolve_series(const Couplings& couplings, std::span<const double> t_grid)
{
    check_grid(t_grid);
    std::vector<BogoliubovMap> out;
    out.reserve(t_grid.size());
    if (t_grid.empty()) {
        return out;
    }
    const DriftMatrix drift = build_drift_matrix(couplings);

    const double rate = drift_growth_rate(drift);
    if (rate * t_grid.back() > kMaxGrowthExponent) {
        throw OverflowRisk("evolve_series: growth_rate * t_max = " + std::to_string(rate * t_grid.back()) +
                           " exceeds " + std::to_string(kMaxGrowthExponent));
    }

    if (!is_uniform(t_grid)) {
        for (double t : t_grid) {
            out.push_back(propagate(drift, t));
        }
        return out;
    }

    const double step = (t_grid.back() - t_grid.front()) / static_cast<double>(t_grid.size() - 1);
    const Matrix4c step_map = propagate(drift, step).matrix;
    out.push_back(propagate(drift, t_grid.front()));
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
        BogoliubovMap next;
        next.matrix = step_map * out.back().matrix;
        next.time = t_grid[k];
        next.kappa = couplings.kappa;
        out.push_back(next);
    }
    return out;
}

std::vector<BogoliubovMap> evolve_series(const ModelParams& params, std::span<const double> t_grid)
{
    return evolve_series(params.couplings(), t_grid);
}

double symplectic_defect(const BogoliubovMap& map)
{
    const Eigen::Matrix<Complex, 4, 1> jd(1.0, 1.0, -1.0, -1.0);
    const Matrix4c j = jd.asDiagonal();
    const Matrix4c& u = map.matrix;
    const Matrix4c residual = u * j * u.adjoint() - j;
    const double row_scale = u.cwiseAbs2().rowwise().sum().maxCoeff();
    return residual.cwiseAbs().maxCoeff() / std::max(1.0, row_scale);
}

}  // namespace dce
