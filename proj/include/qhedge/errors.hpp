#pragma once

#include <stdexcept>
#include <string>

namespace qhedge {

// Every failure raised by the library derives from Error. The CLI maps
// input-side kinds to exit code 2 and pipeline contract kinds to 3.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual bool is_input_error() const noexcept { return false; }
};

/// Qubit count, image side or vector length outside the supported range.
class SizeError : public Error {
  public:
    explicit SizeError(const std::string &msg) : Error("size error: " + msg) {}
    [[nodiscard]] bool is_input_error() const noexcept override { return true; }
};

/// Argument values that violate an operation's precondition.
class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string &msg)
        : Error("validation error: " + msg) {}
    [[nodiscard]] bool is_input_error() const noexcept override { return true; }
};

class IndexError : public Error {
  public:
    explicit IndexError(const std::string &msg) : Error("index error: " + msg) {}
};

/// Requested measurement outcome has (numerically) zero probability.
class MeasurementError : public Error {
  public:
    explicit MeasurementError(const std::string &msg)
        : Error("measurement error: " + msg) {}
};

/// A state does not have the structure an operation requires.
class ContractError : public Error {
  public:
    explicit ContractError(const std::string &msg)
        : Error("contract error: " + msg) {}
};

/// Normalization is undefined (e.g. an all-black image under amplitude encoding).
class DegenerateInputError : public Error {
  public:
    explicit DegenerateInputError(const std::string &msg)
        : Error("degenerate input: " + msg) {}
};

/// Unreadable, unsupported or corrupt image files; I/O failures.
class InputError : public Error {
  public:
    explicit InputError(const std::string &msg) : Error("input error: " + msg) {}
    [[nodiscard]] bool is_input_error() const noexcept override { return true; }
};

} // namespace qhedge
