#ifndef UAA_ERRORS_HPP
#define UAA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace uaa {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the potential's domain (or at a pole).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Operation not available for this potential kind or parameter range.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// No q(x) satisfying both the pole and extreme-point constraints.
class SelectionError : public Error {
public:
    using Error::Error;
};

/// Stationary point of g with vanishing second derivative.
class DegenerateExtremeError : public Error {
public:
    using Error::Error;
};

/// Requested quantum number has no bound state.
class NoBoundStateError : public Error {
public:
    using Error::Error;
};

/// Iteration (root finding, ODE step control, quadrature) failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Turning-point structure does not match what the operation requires.
class ClassificationError : public Error {
public:
    using Error::Error;
};

/// More than two turning points at the given energy.
class TopologyError : public Error {
public:
    using Error::Error;
};

/// The uniform approximation is not applicable for these parameters.
class MethodInapplicableError : public Error {
public:
    using Error::Error;
};

/// Energy is not an eigenvalue where one is required.
class OffShellError : public Error {
public:
    using Error::Error;
};

/// Argument outside the supported evaluation range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Boundary condition incompatible with the turning-point topology.
class BoundaryError : public Error {
public:
    using Error::Error;
};

/// Grid too small to contain the requested state.
class ExtentError : public Error {
public:
    using Error::Error;
};

/// Scattering requested below the asymptotic potential level.
class NoScatteringError : public Error {
public:
    using Error::Error;
};

} // namespace uaa

#endif
