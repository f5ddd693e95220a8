#pragma once

#include <stdexcept>
#include <string>

namespace nodal {

/// Bad input from the caller: inadmissible keys, invalid vectors, bad flags.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A formal-series precondition failed (non-unit divisor, wrong constant term).
class SeriesError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An internal identity or recursion invariant did not hold.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

#define NODAL_CHECK(cond, msg)                                                  \
    do {                                                                        \
        if (!(cond)) throw ::nodal::ConsistencyError(std::string("check failed: ") + (msg)); \
    } while (0)

} // namespace nodal
