// Error types shared by every part of the library.

#ifndef UALG_ERROR_HPP_
#define UALG_ERROR_HPP_

#include <stdexcept>  // for runtime_error
#include <string>     // for string

namespace ualg {

  //! Malformed or inconsistent input: bad documents, out-of-range elements,
  //! unknown symbols, arity mismatches.
  class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! A configured resource bound (closure cap, enumeration cap) was hit.
  //! Distinguishable from a mathematical failure.
  class ResourceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! Syntax error in term or literal text; `position()` is a 0-based offset.
  class ParseError : public InputError {
   public:
    ParseError(std::string const& msg, size_t pos)
        : InputError(msg + " at position " + std::to_string(pos)), _pos(pos) {}

    size_t position() const noexcept {
      return _pos;
    }

   private:
    size_t _pos;
  };

}  // namespace ualg

#endif  // UALG_ERROR_HPP_
