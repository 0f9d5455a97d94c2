#pragma once

#include <stdexcept>
#include <string>

namespace elcdec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class NotQrPrime : public Error {
 public:
  using Error::Error;
};

// Alist parsing: carries the 1-based line number of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class InconsistentDegrees : public Error {
 public:
  using Error::Error;
};

class NoSuchEdge : public Error {
 public:
  using Error::Error;
};

class PivotBit : public Error {
 public:
  using Error::Error;
};

}  // namespace elcdec
