#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dws {

/// Error in the textual form of an expression or config file.
/// `offset` is the byte position in the source string at which the
/// problem was detected.
class SyntaxError : public std::runtime_error {
  public:
    SyntaxError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

  private:
    std::size_t offset_;
};

/// Evaluation of a mathematically invalid operation (division by zero,
/// log of a non-positive number, sqrt of a negative number, overflow).
class DomainError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Base class for failures of the numerical machinery (as opposed to bad
/// input).  The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The adaptive ODE integrator could not meet its tolerance.
class StepSizeUnderflow : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Newton iteration failed to converge; carries the best iterate seen.
class NoConvergence : public NumericalError {
  public:
    NoConvergence(const std::string& what, std::complex<double> best, double residual)
        : NumericalError(what), best_iterate_(best), residual_(residual) {}
    std::complex<double> best_iterate() const { return best_iterate_; }
    double residual() const { return residual_; }

  private:
    std::complex<double> best_iterate_;
    double residual_;
};

/// |dgamma0| underflowed during Newton iteration (suspected multiple root).
class DerivativeBreakdown : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Contour quadrature did not settle on an integer within the node budget;
/// an eigenvalue probably lies on or very near the contour.
class ContourTooClose : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// The argument-principle count inside a box disagrees with the number of
/// roots actually located.
class CompletenessFailure : public NumericalError {
  public:
    CompletenessFailure(const std::string& what, int box_index, int deficit)
        : NumericalError(what), box_index_(box_index), deficit_(deficit) {}
    int box_index() const { return box_index_; }
    int deficit() const { return deficit_; }

  private:
    int box_index_;
    int deficit_;
};

/// A computation was asked for more eigenvalues than the spectrum holds.
class InsufficientSpectrum : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Least-squares system too ill-conditioned to trust.
class IllConditioned : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// The dense eigensolver failed to converge.
class EigensolverFailure : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Reciprocal of a truncated series whose leading coefficient vanishes.
class DivisionByZero : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

}  // namespace dws
