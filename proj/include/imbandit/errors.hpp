#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace imbandit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class RangeError : public ParseError {
public:
    using ParseError::ParseError;
};

class DuplicateEdgeError : public ParseError {
public:
    using ParseError::ParseError;
};

// Raised when some node's incoming probability mass reaches 1.
class NoDecayError : public Error {
public:
    using Error::Error;
};

class TooManyEdgesError : public Error {
public:
    using Error::Error;
};

class BudgetError : public Error {
public:
    using Error::Error;
};

class CascadeIntegrityError : public Error {
public:
    using Error::Error;
};

class SingularityError : public Error {
public:
    using Error::Error;
};

class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace imbandit
