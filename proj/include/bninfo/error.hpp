// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <stdexcept>
#include <string>

namespace bninfo {

/// Thrown on computation failures (singular designs, non-PD covariances, ...).
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by the network/dataset parsers; carries a 1-based line number.
class parse_error : public error {
 public:
  parse_error(int line, const std::string& what)
      : error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace bninfo
