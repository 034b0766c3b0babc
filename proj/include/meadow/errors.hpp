#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace meadow {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A term mixes `/` and `inv`, or uses the wrong signature for the operation.
class MixedSignature : public Error {
public:
    using Error::Error;
};

class OpenTerm : public Error {
public:
    using Error::Error;
};

class NotRingTerm : public Error {
public:
    using Error::Error;
};

class NotPolynomial : public Error {
public:
    using Error::Error;
};

class UnboundVariable : public Error {
public:
    explicit UnboundVariable(const std::string& name)
        : Error("unbound variable '" + name + "'"), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class NonSquareFree : public Error {
public:
    explicit NonSquareFree(unsigned long long k)
        : Error("no minimal meadow on Z/" + std::to_string(k) + "Z: " +
                std::to_string(k) + " is not square-free"),
          k_(k) {}
    unsigned long long k() const noexcept { return k_; }

private:
    unsigned long long k_;
};

class NotPrime : public Error {
public:
    using Error::Error;
};

class InfiniteExhaustive : public Error {
public:
    using Error::Error;
};

class InfiniteCarrier : public Error {
public:
    using Error::Error;
};

class PremiseFailed : public Error {
public:
    using Error::Error;
};

class NoWitnessConstructed : public Error {
public:
    using Error::Error;
};

/// Malformed model specifier, assignment or value literal.
class BadSpecifier : public Error {
public:
    using Error::Error;
};

/// `inv(...)` in divisive mode or `/` in inversive mode.
class SignatureError : public Error {
public:
    SignatureError(std::size_t line, std::size_t column, const std::string& what)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, std::string expected, std::string found)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected +
                ", found " + found),
          line_(line),
          column_(column),
          expected_(std::move(expected)),
          found_(std::move(found)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& expected() const noexcept { return expected_; }
    const std::string& found() const noexcept { return found_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string expected_;
    std::string found_;
};

}  // namespace meadow
