#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hil {

using cplx = std::complex<double>;

/// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class ErrorKind {
    invalid_input,
    range_violation,
    order_exceeded,
    out_of_domain,
    out_of_disk,
    unsupported,
    inconclusive,
    hypothesis_violated,
    boundary_root,
    collapse_detected,
    underflow,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

template <ErrorKind K>
class TypedError : public Error {
public:
    explicit TypedError(const std::string& what) : Error(K, what) {}
};

using InvalidInput = TypedError<ErrorKind::invalid_input>;
using RangeViolation = TypedError<ErrorKind::range_violation>;
using OrderExceeded = TypedError<ErrorKind::order_exceeded>;
using OutOfDomain = TypedError<ErrorKind::out_of_domain>;
using OutOfDisk = TypedError<ErrorKind::out_of_disk>;
using Unsupported = TypedError<ErrorKind::unsupported>;
using Inconclusive = TypedError<ErrorKind::inconclusive>;
using HypothesisViolated = TypedError<ErrorKind::hypothesis_violated>;
using BoundaryRoot = TypedError<ErrorKind::boundary_root>;
using CollapseDetected = TypedError<ErrorKind::collapse_detected>;
using Underflow = TypedError<ErrorKind::underflow>;

}  // namespace hil
