#pragma once

#include <stdexcept>
#include <string>

namespace dce {

// Bad user-supplied input. The CLI maps these to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NonFiniteInput : public InputError {
public:
    using InputError::InputError;
};

class EpsilonOutOfRange : public InputError {
public:
    using InputError::InputError;
};

// Failure of a numerical operation on otherwise valid input (exit code 1).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OverflowRisk : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NegativeDiscriminant : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonPhysicalSummary : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class LegendreOverflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class GammaImaginary : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace dce
