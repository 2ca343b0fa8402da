#ifndef DPL_ERRORS_HPP_
#define DPL_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dpl {

// Malformed surface syntax. `position` is a 0-based byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error("at " + std::to_string(position) + ": " + message), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Bad vocabulary, or a name used outside the vocabulary it is checked against.
class VocabularyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The request would exceed a hard resource limit (atom bit-width, fresh-action budget).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its documented domain.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dpl

#endif  // DPL_ERRORS_HPP_
