#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ddvv {

// All domain failures carry a stable kind tag so per-sample errors can be
// recorded in reports without string-matching what() text.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

class SyntaxError : public Error {
public:
  // offset is a 1-based byte position into the source string.
  SyntaxError(std::size_t offset, std::string expected)
      : Error("SyntaxError", "at offset " + std::to_string(offset) +
                                 ", expected " + expected),
        offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

private:
  std::size_t offset_;
  std::string expected_;
};

}  // namespace ddvv
