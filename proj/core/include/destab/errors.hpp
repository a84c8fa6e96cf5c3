#pragma once

#include <stdexcept>
#include <string>

namespace destab {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define DESTAB_DEFINE_ERROR(Name)                                   \
    struct Name : Error {                                           \
        explicit Name(const std::string& msg) : Error(msg) {}       \
    }

DESTAB_DEFINE_ERROR(DimensionMismatch);
DESTAB_DEFINE_ERROR(NotPositiveDefinite);
DESTAB_DEFINE_ERROR(CapacityExceeded);
DESTAB_DEFINE_ERROR(ZeroRay);
DESTAB_DEFINE_ERROR(InvalidInput);
DESTAB_DEFINE_ERROR(DivergentFlow);
DESTAB_DEFINE_ERROR(NotDestabilizable);
DESTAB_DEFINE_ERROR(LengthMismatch);
DESTAB_DEFINE_ERROR(SemistableType);
DESTAB_DEFINE_ERROR(InvalidBreakpoint);
DESTAB_DEFINE_ERROR(TopologicalConditionViolated);
DESTAB_DEFINE_ERROR(NotALattice);
DESTAB_DEFINE_ERROR(AmbiguousLattice);
DESTAB_DEFINE_ERROR(NoFiltrationFound);
DESTAB_DEFINE_ERROR(MultipleFiltrationsFound);
DESTAB_DEFINE_ERROR(AlreadySemistable);
DESTAB_DEFINE_ERROR(VerificationFailed);

#undef DESTAB_DEFINE_ERROR

} // namespace destab
