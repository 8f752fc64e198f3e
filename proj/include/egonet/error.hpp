#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace egonet {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed archive record. Carries the 1-based line number of the offending line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& detail, const std::string& source = {});
    std::size_t line() const noexcept { return line_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

/// Input is well-formed but violates a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A classifier was asked for a verdict it cannot give (insufficient history).
class ClassificationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace egonet
