#pragma once

#include <stdexcept>
#include <string>

namespace cm {

// Base class for every error raised by the library. Each subclass names one
// failure mode so callers (and the CLI) can map them to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CM_DECLARE_ERROR(Name)                         \
    class Name : public Error {                        \
    public:                                            \
        explicit Name(const std::string& what)         \
            : Error(std::string(#Name ": ") + what) {} \
    }

CM_DECLARE_ERROR(NotAGroup);
CM_DECLARE_ERROR(NotASubgroup);
CM_DECLARE_ERROR(NotACMField);
CM_DECLARE_ERROR(NotACMType);
CM_DECLARE_ERROR(NotAnAutomorphismOfK);
CM_DECLARE_ERROR(NotNested);
CM_DECLARE_ERROR(NotGalois);
CM_DECLARE_ERROR(InternalInconsistency);
CM_DECLARE_ERROR(NoSolution);
CM_DECLARE_ERROR(NotSerrePair);
CM_DECLARE_ERROR(FactorNotInH);
CM_DECLARE_ERROR(NotPrime);
CM_DECLARE_ERROR(NoPrimaryGenerator);
CM_DECLARE_ERROR(NotCoprime);
CM_DECLARE_ERROR(BadPrime);
CM_DECLARE_ERROR(RamifiedOrBadPrime);
CM_DECLARE_ERROR(HasseViolation);
CM_DECLARE_ERROR(InputError);

#undef CM_DECLARE_ERROR

} // namespace cm
