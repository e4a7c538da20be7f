#ifndef MATTERWAVE_ERRORS_HPP
#define MATTERWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace matterwave {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Negative evolution time; packets expand from release at t = 0 only.
class TimeDomainError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Field with non-finite amplitudes or inconsistent sizes.
class InvalidFieldError : public Error {
public:
    using Error::Error;
};

/// Superposition whose norm constant falls below the degeneracy threshold,
/// so the wavefunction vanishes identically up to floating-point noise.
class DegenerateSuperpositionError : public Error {
public:
    using Error::Error;
};

/// Eigenbasis too small to capture the projected packet.
class InsufficientBasisError : public Error {
public:
    using Error::Error;
};

/// Numerical propagation drifted in norm beyond its tolerance.
class UnstableRunError : public Error {
public:
    using Error::Error;
};

/// Fewer than three fringe maxima in the analysis window; the packets
/// have not overlapped yet.
class NoFringesError : public Error {
public:
    using Error::Error;
};

} // namespace matterwave

#endif
