#pragma once

#include <stdexcept>
#include <string>

namespace sperner {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed graph: bad length, duplicate id, dangling endpoint, unknown edge.
class StructuralError : public Error {
public:
    using Error::Error;
};

class UnknownVertexError : public Error {
public:
    explicit UnknownVertexError(const std::string& vertex)
        : Error("unknown vertex '" + vertex + "'") {}
};

class IndexError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

// Operation requires a one-way Sperner graph and got something else.
class ClassError : public Error {
public:
    using Error::Error;
};

// The walk is undefined (a reachable vertex has nowhere to go).
class ModelError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

// Input file could not be read or decoded.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace sperner
