#pragma once

#include <stdexcept>
#include <string>

namespace ckdual {

enum class ErrorKind {
  NotSquare,
  NonBinaryEntry,
  ZeroRow,
  ZeroColumn,
  ParseError,
  LevelTooSmall,
  SignatureMismatch,
  UnsupportedGenerator,
  BasisMismatch,
  InvalidArgument,
  Overflow,
};

const char* to_string(ErrorKind kind);

// All library failures are reported through this exception. `index` carries
// the 1-based row/column for ZeroRow/ZeroColumn and is -1 otherwise.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what, int index = -1)
      : std::runtime_error(what), kind_(kind), index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  int index() const noexcept { return index_; }

private:
  ErrorKind kind_;
  int index_;
};

} // namespace ckdual
