#pragma once

#include <stdexcept>
#include <string>

namespace blaschke_lab {

// Base of every error raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define BLASCHKE_LAB_ERROR(Name)                                   \
    struct Name : Error {                                          \
        explicit Name(const std::string& what) : Error(what) {}    \
    }

BLASCHKE_LAB_ERROR(DomainError);          // argument outside the admissible set
BLASCHKE_LAB_ERROR(DimensionMismatch);    // operand sizes disagree
BLASCHKE_LAB_ERROR(DivergenceError);      // truncated composition did not settle
BLASCHKE_LAB_ERROR(PoleError);            // evaluation too close to a pole
BLASCHKE_LAB_ERROR(RankError);            // Gram matrix numerically singular
BLASCHKE_LAB_ERROR(TailError);            // shell system not visible in the window
BLASCHKE_LAB_ERROR(NotInCommutantError);  // operator fails the commutation test
BLASCHKE_LAB_ERROR(GapError);             // no clean singular-value gap
BLASCHKE_LAB_ERROR(ConditioningError);    // least squares / generators ill conditioned
BLASCHKE_LAB_ERROR(NotSelfAdjointError);
BLASCHKE_LAB_ERROR(MembershipError);      // function outside the model space
BLASCHKE_LAB_ERROR(ConfigError);          // malformed experiment configuration

#undef BLASCHKE_LAB_ERROR

}  // namespace blaschke_lab
