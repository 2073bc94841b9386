#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cb {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A cell id outside the ambient poset was passed to an operator.
class AmbientMismatch : public Error {
public:
    using Error::Error;
};

class InvalidComplex : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// A property that the construction guarantees turned out false.
class InternalError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace cb
