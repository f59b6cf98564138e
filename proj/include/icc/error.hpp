#pragma once

#include <stdexcept>
#include <string>

namespace icc {

// Base of every error raised by the library. The CLI maps each concrete
// type onto a process exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateGeometry : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class InpaintUnderconstrained : public Error {
public:
    using Error::Error;
};

class NoForegroundEvidence : public Error {
public:
    using Error::Error;
};

class IOError : public Error {
public:
    using Error::Error;
};

}  // namespace icc
