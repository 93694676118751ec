#ifndef KCOUNT_ERRORS_HPP
#define KCOUNT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kcount {

// Exit-code mapping used by the CLI: parse -> 2, parameter -> 3, limit -> 4.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParameterError : std::runtime_error {
  explicit ParameterError(const std::string& msg) : std::runtime_error(msg) {}
};

// Grid size would not fit a 64-bit signed integer.
struct CapacityError : ParameterError {
  explicit CapacityError(const std::string& msg) : ParameterError(msg) {}
};

// An oracle refused an input above its configured size limit.
struct LimitError : std::runtime_error {
  explicit LimitError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kcount

#endif  // KCOUNT_ERRORS_HPP
