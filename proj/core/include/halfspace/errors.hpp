#pragma once

#include <stdexcept>
#include <string>

namespace halfspace {

// Base of every error the library raises. The CLI maps the concrete type to
// an exit code, so new error kinds should derive from one of these.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematically meaningful range.
class DomainError : public Error {
public:
    using Error::Error;
};

// Adaptive quadrature or a root finder ran out of budget.
class NonConvergence : public Error {
public:
    using Error::Error;
};

// The fiber has no interior maximum (E - lambda P <= 0).
class GeometryError : public Error {
public:
    using Error::Error;
};

class SingularFit : public Error {
public:
    using Error::Error;
};

class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

class IllConditionedGram : public Error {
public:
    using Error::Error;
};

}  // namespace halfspace
