#pragma once

#include <stdexcept>
#include <string>

namespace bssk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define BSSK_ERROR(Name)                                              \
  struct Name : Error {                                               \
    using Error::Error;                                               \
    const char* kind() const noexcept override { return #Name; }      \
  };

BSSK_ERROR(InvalidParameter)
BSSK_ERROR(NoRoot)
BSSK_ERROR(BracketFailure)
BSSK_ERROR(DegenerateSpectrum)
BSSK_ERROR(BranchCut)
BSSK_ERROR(NegativeDiscriminant)
BSSK_ERROR(Breakdown)
BSSK_ERROR(TailTooFat)
BSSK_ERROR(ToleranceNotMet)
BSSK_ERROR(TableError)
BSSK_ERROR(ConfigError)

#undef BSSK_ERROR

}  // namespace bssk
