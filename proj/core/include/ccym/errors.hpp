#pragma once

#include <stdexcept>
#include <string>

namespace ccym {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Extents, grids, ranks or matrix sizes do not line up.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Argument outside the domain of an operation (x <= 0, unsupported d, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A recursion hit a zero leading factor. Carries the order at which it happened.
class ResonanceError : public Error {
public:
    ResonanceError(const std::string& what, int order) : Error(what), order_(order) {}
    int order() const { return order_; }

private:
    int order_;
};

// A numerical precondition failed. Carries the measured defect.
class PreconditionError : public Error {
public:
    PreconditionError(const std::string& what, double measured) : Error(what), measured_(measured) {}
    double measured() const { return measured_; }

private:
    double measured_;
};

}  // namespace ccym
