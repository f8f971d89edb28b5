#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epsfree {

/// Base of every error raised by the library. Input problems derive from
/// InputError, resource caps from ResourceError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Graph validation failure at a specific (0-based) index pair.
class GraphError : public InputError {
 public:
  enum class Kind { NonSymmetric, NonZeroDiagonal, NonBinaryEntry, NotSquare, BadSize };

  GraphError(Kind kind, std::size_t row, std::size_t col, const std::string& what)
      : InputError(what), kind_(kind), row_(row), col_(col) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  Kind kind_;
  std::size_t row_;
  std::size_t col_;
};

class BadParams : public InputError {
 public:
  using InputError::InputError;
};

class LetterOutOfRange : public InputError {
 public:
  using InputError::InputError;
};

class NotAClique : public InputError {
 public:
  using InputError::InputError;
};

class NotApplicable : public InputError {
 public:
  using InputError::InputError;
};

/// Parse failure in one of the JSON file formats; the message carries the
/// offending field path.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

class SizeLimitExceeded : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

class BasisTooLarge : public ResourceError {
 public:
  /// `fitting_depth`: deepest truncation known to fit under the cap.
  BasisTooLarge(std::size_t count, std::size_t cap, std::size_t fitting_depth = 0)
      : ResourceError("Fock basis exceeds the configured cap: " + std::to_string(count) +
                      " states > " + std::to_string(cap)),
        count_(count),
        cap_(cap),
        fitting_depth_(fitting_depth) {}

  std::size_t count() const noexcept { return count_; }
  std::size_t cap() const noexcept { return cap_; }
  std::size_t fitting_depth() const noexcept { return fitting_depth_; }

 private:
  std::size_t count_;
  std::size_t cap_;
  std::size_t fitting_depth_;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace epsfree
