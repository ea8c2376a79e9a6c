#pragma once

#include <stdexcept>
#include <string>

namespace kwtopo {

// Error hierarchy shared by all modules. Each condition that callers are
// expected to handle programmatically gets its own type; everything else
// surfaces as std::invalid_argument from the constructors that detect it.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CompositeModulus : Error {
    explicit CompositeModulus(unsigned q)
        : Error("modulus " + std::to_string(q) + " is not prime") {}
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct IncompleteAssignment : Error {
    using Error::Error;
};

struct HalfEdgesPresent : Error {
    using Error::Error;
};

struct IntermediateTableTooLarge : Error {
    using Error::Error;
};

struct AssumptionViolated : Error {
    using Error::Error;
};

struct UnsupportedEntry : Error {
    using Error::Error;
};

struct InvalidHoleIndex : Error {
    using Error::Error;
};

struct BoundaryConditionViolated : Error {
    using Error::Error;
};

struct NotATorus : Error {
    using Error::Error;
};

struct UnknownCycle : Error {
    using Error::Error;
};

struct NonpositiveBeta : Error {
    using Error::Error;
};

} // namespace kwtopo
