#pragma once

#include <stdexcept>
#include <string>

namespace freenoise {

// Two families: bad input (CLI exit 2) and numerical failure (CLI exit 3).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class GapTooSmall : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotNuclear : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class SingularityTooStrong : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class LevelTooLow : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DivergentSeries : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class CapExceeded : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureNonConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class UncertifiedTruncation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class CertificationFailed : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonCauchy : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace freenoise
