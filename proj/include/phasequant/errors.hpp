#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace phq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A quadrature produced a non-finite value; `node` holds the offending node.
class IntegrationFailure : public Error {
public:
    IntegrationFailure(const std::string& what, std::vector<double> node)
        : Error(what), node(std::move(node)) {}
    std::vector<double> node;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset, std::string expected)
        : Error(what), offset(offset), expected(std::move(expected)) {}
    std::size_t offset;
    std::string expected;
};

class UnknownIdentifier : public Error {
public:
    explicit UnknownIdentifier(const std::string& name)
        : Error("unknown identifier '" + name + "'"), name(name) {}
    std::string name;
};

class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, std::vector<double> point)
        : Error(what), point(std::move(point)) {}
    std::vector<double> point;
};

class OracleUnavailable : public Error {
public:
    using Error::Error;
};

// Input grid does not cover the mass of a Gaussian kernel.
class SupportError : public Error {
public:
    using Error::Error;
};

// Malformed file or stream input.
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace phq
