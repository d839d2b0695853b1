#pragma once

#include <stdexcept>
#include <string>

namespace cellcount {

// Precondition violations and size-guard failures are reported by type so
// callers (and the CLI) can map them to exit codes deterministically.
struct Error : std::runtime_error {
    explicit Error(std::string const &msg) : std::runtime_error(msg) {}
};

#define CELLCOUNT_DEFINE_ERROR(name)                                          \
    struct name : Error {                                                      \
        explicit name(std::string const &msg) : Error(#name ": " + msg) {}    \
    }

CELLCOUNT_DEFINE_ERROR(DimensionMismatch);
CELLCOUNT_DEFINE_ERROR(IndexOutOfRange);
CELLCOUNT_DEFINE_ERROR(NonUnitPivot);
CELLCOUNT_DEFINE_ERROR(NotTotallyUnimodular);
CELLCOUNT_DEFINE_ERROR(SizeLimitExceeded);
CELLCOUNT_DEFINE_ERROR(UnknownBuiltin);
CELLCOUNT_DEFINE_ERROR(InvalidEdge);
CELLCOUNT_DEFINE_ERROR(NotShrinkable);
CELLCOUNT_DEFINE_ERROR(InsufficientSamples);
CELLCOUNT_DEFINE_ERROR(InconsistentSamples);
CELLCOUNT_DEFINE_ERROR(PeriodSearchExhausted);
CELLCOUNT_DEFINE_ERROR(HasColoop);
CELLCOUNT_DEFINE_ERROR(HasLoop);
CELLCOUNT_DEFINE_ERROR(ZeroEntry);
CELLCOUNT_DEFINE_ERROR(NotSQU);

#undef CELLCOUNT_DEFINE_ERROR

} // namespace cellcount
