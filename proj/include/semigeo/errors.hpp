// Exception types shared by every semigeo module.
//
// Verdicts (a violation found, a bounded search coming up empty) are returned
// as values; exceptions are reserved for malformed input and exhausted caps.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semigeo {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class UnknownSymbol : public Error {
   public:
    using Error::Error;
  };

  class InvalidRule : public Error {
   public:
    using Error::Error;
  };

  class IncompleteSystem : public Error {
   public:
    using Error::Error;
  };

  class BackendMismatch : public Error {
   public:
    using Error::Error;
  };

  class NotAssociative : public Error {
   public:
    using Error::Error;
  };

  class InvalidElement : public Error {
   public:
    using Error::Error;
  };

  // Thrown when an enumeration would exceed its element cap.  `cap` names the
  // bound that was hit so callers can tell users what to raise.
  class CapExceeded : public Error {
   public:
    CapExceeded(std::string const& what, std::size_t cap)
        : Error(what), _cap(cap) {}

    [[nodiscard]] std::size_t cap() const noexcept {
      return _cap;
    }

   private:
    std::size_t _cap;
  };

  class NotFinite : public Error {
   public:
    using Error::Error;
  };

  class NotAnHClass : public Error {
   public:
    using Error::Error;
  };

  class InvalidSpace : public Error {
   public:
    using Error::Error;
  };

  class NotStronglyConnected : public Error {
   public:
    using Error::Error;
  };

  class ParseError : public Error {
   public:
    using Error::Error;
  };

}  // namespace semigeo
