#pragma once

#include <stdexcept>
#include <string>

namespace zkfault {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define ZKFAULT_ERROR(Name)                                   \
    class Name : public Error {                               \
    public:                                                   \
        explicit Name(const std::string& what) : Error(what) {} \
    }

ZKFAULT_ERROR(ZeroInverse);
ZKFAULT_ERROR(DimensionMismatch);
ZKFAULT_ERROR(BadIndexSet);
ZKFAULT_ERROR(BadWeight);
ZKFAULT_ERROR(BadParams);
ZKFAULT_ERROR(PathMismatch);
ZKFAULT_ERROR(MalformedSignature);
ZKFAULT_ERROR(InconsistentPair);
ZKFAULT_ERROR(AmbiguousMatch);
ZKFAULT_ERROR(NoMatch);
ZKFAULT_ERROR(TooLarge);
ZKFAULT_ERROR(BadProbability);
ZKFAULT_ERROR(NoLeakedRound);
ZKFAULT_ERROR(SingularMatrix);

#undef ZKFAULT_ERROR

}  // namespace zkfault
