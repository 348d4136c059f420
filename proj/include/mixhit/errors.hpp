#pragma once

#include <stdexcept>
#include <string>

namespace mixhit {

// Base of every error raised by the library. Callers that only care about
// "something about the input was wrong" can catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define MIXHIT_DEFINE_ERROR(Name)                \
    class Name : public Error {                  \
    public:                                      \
        using Error::Error;                      \
    }

MIXHIT_DEFINE_ERROR(InvalidArgument);
MIXHIT_DEFINE_ERROR(DimensionMismatch);
MIXHIT_DEFINE_ERROR(InvalidDistribution);
MIXHIT_DEFINE_ERROR(InvalidKernel);
MIXHIT_DEFINE_ERROR(NonUniqueStationary);
MIXHIT_DEFINE_ERROR(NonStationaryPi);
MIXHIT_DEFINE_ERROR(ZeroMassState);
MIXHIT_DEFINE_ERROR(AbsorbingComplement);
MIXHIT_DEFINE_ERROR(TooManyStates);
MIXHIT_DEFINE_ERROR(NoFiniteTime);
MIXHIT_DEFINE_ERROR(NonFiniteDensity);
MIXHIT_DEFINE_ERROR(TraceStepCapExceeded);
MIXHIT_DEFINE_ERROR(HoldingCapExceeded);
MIXHIT_DEFINE_ERROR(RejectionCapExceeded);
MIXHIT_DEFINE_ERROR(ParseError);
MIXHIT_DEFINE_ERROR(ConfigError);

#undef MIXHIT_DEFINE_ERROR

}  // namespace mixhit
