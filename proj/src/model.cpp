#include "dce/model.hpp"

#include "dce/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dce {

double Couplings::scale() const
{
    return std::max({std::abs(beta), std::abs(g), std::abs(kappa)});
}

ModelParams::ModelParams(Validated, double epsilon, double g, double kappa)
    : epsilon_(epsilon),
      beta_(epsilon / 4.0),
      g_(g),
      kappa_(kappa),
      strong_modulation_(std::abs(epsilon) > kEpsilonWarnBound)
{
}

ModelParams validate_params(double epsilon, double g, double kappa)
{
    if (!std::isfinite(epsilon) || !std::isfinite(g) || !std::isfinite(kappa)) {
        throw NonFiniteInput("model parameters must be finite (epsilon=" + std::to_string(epsilon) +
                             ", g=" + std::to_string(g) + ", kappa=" + std::to_string(kappa) + ")");
    }
    if (std::abs(epsilon) >= kEpsilonHardBound) {
        throw EpsilonOutOfRange("|epsilon| must be below 0.5, got " + std::to_string(epsilon));
    }
    return ModelParams(ModelParams::Validated{}, epsilon, g, kappa);
}

DriftMatrix build_drift_matrix(const Couplings& c)
{
    const Complex i{0.0, 1.0};
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = -i * c.kappa;
    m(0, 1) = -i * c.g;
    m(0, 2) = 2.0 * c.beta;
    m(1, 0) = -i * c.g;
    m(1, 1) = -i * c.kappa;
    m(2, 0) = 2.0 * c.beta;
    m(2, 2) = i * c.kappa;
    m(2, 3) = i * c.g;
    m(3, 2) = i * c.g;
    m(3, 3) = i * c.kappa;
    return {m};
}

DriftMatrix build_drift_matrix(const ModelParams& params)
{
    return build_drift_matrix(params.couplings());
}

}  // namespace dce
