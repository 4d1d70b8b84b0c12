#pragma once

#include <Eigen/Core>

#include <complex>

namespace dce {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;

// Raw coupling constants of the co-rotating (tilde) frame equations.
// No physical-validity bound is applied here, so scale-free analyses
// (regime maps with beta = 1, closed-form checks) can use it directly.
struct Couplings {
    double beta = 0.0;   // squeezing rate, epsilon / 4
    double g = 0.0;      // field-detector coupling
    double kappa = 0.0;  // detuning, modulation frequency eta = 2(1 + kappa)

    // Largest magnitude among the three constants.
    [[nodiscard]] double scale() const;
};

// Validated physical parameters. Construct through validate_params().
class ModelParams {
public:
    [[nodiscard]] double epsilon() const { return epsilon_; }
    [[nodiscard]] double beta() const { return beta_; }
    [[nodiscard]] double g() const { return g_; }
    [[nodiscard]] double kappa() const { return kappa_; }

    // True when |epsilon| > 0.1: outside the weak-modulation regime the
    // quadratic model was built for, but still accepted.
    [[nodiscard]] bool strong_modulation() const { return strong_modulation_; }

    [[nodiscard]] Couplings couplings() const { return {beta_, g_, kappa_}; }

    friend ModelParams validate_params(double epsilon, double g, double kappa);

private:
    struct Validated {};
    ModelParams(Validated, double epsilon, double g, double kappa);

    double epsilon_;
    double beta_;
    double g_;
    double kappa_;
    bool strong_modulation_;
};

inline constexpr double kEpsilonHardBound = 0.5;
inline constexpr double kEpsilonWarnBound = 0.1;

// Throws NonFiniteInput or EpsilonOutOfRange (|epsilon| >= 0.5).
ModelParams validate_params(double epsilon, double g, double kappa);

// Drift matrix M of d/dt (a, b, a^+, b^+)^T = M (a, b, a^+, b^+)^T in the
// frame co-rotating with the detuning:
//
//   [ -i kappa   -i g      2 beta    0       ]
//   [ -i g       -i kappa  0         0       ]
//   [  2 beta     0        i kappa   i g     ]
//   [  0          0        i g       i kappa ]
struct DriftMatrix {
    Matrix4c entries;
};

DriftMatrix build_drift_matrix(const Couplings& c);
DriftMatrix build_drift_matrix(const ModelParams& params);

}  // namespace dce
