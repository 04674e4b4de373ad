#pragma once

#include <stdexcept>
#include <string>

namespace gmd {

// Base for every error the library raises. Callers that only care about
// "bad input vs. bug" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Inputs that are well-typed but inconsistent (dimension mismatch, bad index,
// malformed document).
class DataError : public Error {
public:
    using Error::Error;
};

// Exhaustive solvers refuse instances past their enumeration bound.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

// Transportation instance whose supply and demand totals disagree.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

}  // namespace gmd
