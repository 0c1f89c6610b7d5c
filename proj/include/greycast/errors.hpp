#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace greycast {

enum class ErrorKind {
    InvalidInput,
    InsufficientData,
    SingularSystem,
    NumericalDegeneracy,
    Parse,
    CalibrationFailed,
    Io,
};

/// Base for every error raised by the library. The kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(ErrorKind::InvalidInput, what) {}
};

class InsufficientData : public Error {
public:
    explicit InsufficientData(const std::string& what) : Error(ErrorKind::InsufficientData, what) {}
};

class SingularSystem : public Error {
public:
    SingularSystem(const std::string& what, double condition)
        : Error(ErrorKind::SingularSystem, what), condition_(condition) {}

    /// Condition estimate of the normal matrix that triggered the rejection.
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

class NumericalDegeneracy : public Error {
public:
    explicit NumericalDegeneracy(const std::string& what) : Error(ErrorKind::NumericalDegeneracy, what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(ErrorKind::Parse, what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class CalibrationFailed : public Error {
public:
    explicit CalibrationFailed(const std::string& what) : Error(ErrorKind::CalibrationFailed, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace greycast
