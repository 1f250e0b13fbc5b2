#pragma once

#include <stdexcept>
#include <string>

namespace adelic {

enum class ErrorKind {
    InvalidArgument,
    DenominatorNotInS,
    MixedPrimeSets,
    MixedPrimes,
    DivisionByZero,
    InsufficientPrecision,
    IncompatibleResidues,
    ComponentPrimeOutsideSigma,
    PrimeOutsideSigma,
    UnsupportedSigma,
    AtomMismatch,
    UnsupportedAtom,
    InvalidExpression,
    Overflow,
};

const char* to_string(ErrorKind kind);

/// Every library failure is reported as an Error carrying a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace adelic
