#pragma once

#include <stdexcept>
#include <string>

namespace wfq {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// File-format / input errors that carry a location.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, long line, const std::string& msg)
      : Error(file + ":" + std::to_string(line) + ": " + msg) {}
};

}  // namespace wfq
