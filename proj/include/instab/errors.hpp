#ifndef INSTAB_ERRORS_HPP
#define INSTAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace instab {

/// Rejected input: bad dimensions, non-finite values, violated preconditions.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two computation paths that must agree disagreed beyond tolerance.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure to read or write an external file.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace instab

#endif
