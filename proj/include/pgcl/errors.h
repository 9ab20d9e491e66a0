#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgcl {

// Base class for every error raised by the library. `kind()` is the
// machine-readable tag used in CLI error JSON.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define PGCL_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                     \
   public:                                                        \
    using Error::Error;                                           \
    const char* kind() const noexcept override { return #Name; }  \
  }

PGCL_DEFINE_ERROR(InvalidGroup);
PGCL_DEFINE_ERROR(InvalidArgument);
PGCL_DEFINE_ERROR(IndexOutOfRange);
PGCL_DEFINE_ERROR(SizeExceeded);
PGCL_DEFINE_ERROR(NotPGroup);
PGCL_DEFINE_ERROR(NotNormal);
PGCL_DEFINE_ERROR(NotAbelian);
PGCL_DEFINE_ERROR(IdentNotIsomorphism);
PGCL_DEFINE_ERROR(IdentNotCentral);
PGCL_DEFINE_ERROR(ComplexNotExact);
PGCL_DEFINE_ERROR(HomologyInconsistent);
PGCL_DEFINE_ERROR(NotASubgroup);
PGCL_DEFINE_ERROR(PreconditionViolated);
PGCL_DEFINE_ERROR(DecompositionFailed);
PGCL_DEFINE_ERROR(WrongOrder);
PGCL_DEFINE_ERROR(SemanticError);
PGCL_DEFINE_ERROR(SchemaError);
PGCL_DEFINE_ERROR(GoldenMismatch);
PGCL_DEFINE_ERROR(InternalError);

#undef PGCL_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  const char* kind() const noexcept override { return "ParseError"; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace pgcl
