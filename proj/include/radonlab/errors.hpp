#pragma once

#include <stdexcept>
#include <string>

namespace radonlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define RADONLAB_DEFINE_ERROR(Name)         \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(#Name ": " + what) {}       \
  }

RADONLAB_DEFINE_ERROR(IntegerOverflow);
RADONLAB_DEFINE_ERROR(InvalidExponent);
RADONLAB_DEFINE_ERROR(InvalidArgument);
RADONLAB_DEFINE_ERROR(ParseError);
RADONLAB_DEFINE_ERROR(DegenerateInput);
RADONLAB_DEFINE_ERROR(NonIntegerValued);
RADONLAB_DEFINE_ERROR(BudgetExceeded);
RADONLAB_DEFINE_ERROR(NegativeInput);
RADONLAB_DEFINE_ERROR(ZeroInput);
RADONLAB_DEFINE_ERROR(NonInjective);
RADONLAB_DEFINE_ERROR(DegenerateFit);
RADONLAB_DEFINE_ERROR(InvalidCollection);
RADONLAB_DEFINE_ERROR(NegativeSlack);

#undef RADONLAB_DEFINE_ERROR

}  // namespace radonlab
