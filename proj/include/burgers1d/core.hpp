#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace burgers1d {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Base of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user-supplied input (bad grid size, nonpositive eps, ...).
/// The CLI maps these to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Boundary data with beta != -alpha; the matched expansion does not exist.
class IncompatibleBoundary : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// A computation failed numerically. The CLI maps these to exit code 1.
class NumericalError : public Error {
public:
    using Error::Error;
};

class NoConvergence : public NumericalError {
public:
    NoConvergence(const std::string& what, int iterations, double last_residual)
        : NumericalError(what), iterations(iterations), last_residual(last_residual) {}
    int iterations;
    double last_residual;
};

class SingularJacobian : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StepNoConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Symmetrization weight fell below the representable range.
class Underflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// eps below the double-precision floor for eigenvalue work (overridable).
class PrecisionFloor : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Grid too coarse to resolve the internal layer.
class ResolutionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IterationLimit : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NotEnoughPoints : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Uniform mesh on [a, b] with n nodes, endpoints included.
struct Grid {
    double a = -1.0;
    double b = 1.0;
    int n = 0;
    double dx = 0.0;

    double node(int i) const { return a + i * dx; }
    std::vector<double> nodes() const;
};

Grid make_grid(double a, double b, int n);

/// Endpoint values (alpha at x = a, beta at x = b). Construction enforces
/// beta = -alpha exactly: the matched expansion requires it, so fail fast.
struct BoundaryPair {
    BoundaryPair(double alpha, double beta);
    double alpha;
    double beta;
};

BoundaryPair validate_bc(double alpha, double beta);

/// Real-valued samples on a grid. Values are validated finite on construction
/// and treated as immutable afterwards.
struct Field {
    Field() = default;
    Field(Grid g, std::vector<double> v);

    static Field zeros(const Grid& g);

    Grid grid;
    std::vector<double> values;

    int size() const { return grid.n; }
    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return values[static_cast<std::size_t>(i)]; }
};

// ---------------------------------------------------------------------------
// Quadrature and norms (trapezoid rule throughout)
// ---------------------------------------------------------------------------

double integrate(const Field& f);
double integrate_squared(const Field& f);

/// sqrt(int f^2 dx) by the trapezoid rule on f's grid.
double l2_norm(const Field& f);

/// l2_norm of the difference of two fields on the same grid.
double l2_distance(const Field& f, const Field& g);

double max_abs(std::span<const double> v);

// ---------------------------------------------------------------------------
// Least squares line fit (shared by decay-rate and sweep-slope extraction)
// ---------------------------------------------------------------------------

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int count = 0;
};

/// Ordinary least squares of y against x. Degenerate data (zero y-variance)
/// reports r^2 = 1 when the fit is exact, 0 otherwise.
LineFit linear_fit(std::span<const double> xs, std::span<const double> ys);

}  // namespace burgers1d
