#ifndef PULSELAB_ERRORS_HPP
#define PULSELAB_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pulselab {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unknown model, method or figure identifier.
class IdentifierError : public Error {
public:
    using Error::Error;
};

/// Invalid parameter value or malformed specification.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// An operation's precondition does not hold for the given arguments.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The operation is not defined for this model (e.g. tail bounds for a
/// non-decaying pulse).
class UnsupportedModelError : public Error {
public:
    using Error::Error;
};

/// Complex evaluation requested too close to a pole of the model functions.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Detuning and coupling vanish simultaneously; adiabatic-frame quantities
/// are undefined at such a point.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

/// Quadrature did not reach the requested accuracy. Carries the achieved
/// error estimate.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double achieved)
        : Error(what), achieved_(achieved) {}

    double achieved() const { return achieved_; }

private:
    double achieved_;
};

/// NaN or Inf encountered during numerical integration.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Integration contour violates the pole-distance requirement.
class ContourError : public Error {
public:
    using Error::Error;
};

/// Newton refinement of a zero failed; carries the last iterate.
class RefinementError : public Error {
public:
    RefinementError(const std::string& what, std::complex<double> last_iterate)
        : Error(what), last_(last_iterate) {}

    std::complex<double> last_iterate() const { return last_; }

private:
    std::complex<double> last_;
};

/// A numerical limit did not stabilise under radius refinement.
class LimitError : public Error {
public:
    using Error::Error;
};

/// Several zeros tie for the smallest imaginary part; carries the candidates.
class AmbiguityError : public Error {
public:
    AmbiguityError(const std::string& what, std::vector<std::complex<double>> candidates)
        : Error(what), candidates_(std::move(candidates)) {}

    const std::vector<std::complex<double>>& candidates() const { return candidates_; }

private:
    std::vector<std::complex<double>> candidates_;
};

/// File system failure; the message carries the path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace pulselab

#endif  // PULSELAB_ERRORS_HPP
