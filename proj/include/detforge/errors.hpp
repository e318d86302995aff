#pragma once

#include <stdexcept>
#include <string>

namespace detforge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define DETFORGE_ERROR(Name)                     \
    class Name : public Error {                  \
    public:                                      \
        explicit Name(const std::string& what)   \
            : Error(#Name ": " + what) {}        \
    }

DETFORGE_ERROR(MalformedFile);
DETFORGE_ERROR(SymmetryViolation);
DETFORGE_ERROR(NonPositiveOverlap);
DETFORGE_ERROR(IndexOutOfRange);
DETFORGE_ERROR(IoFailure);
DETFORGE_ERROR(LengthMismatch);
DETFORGE_ERROR(NonAntisymmetric);
DETFORGE_ERROR(ShapeMismatch);
DETFORGE_ERROR(NotOrthonormal);
DETFORGE_ERROR(TargetOutOfRange);
DETFORGE_ERROR(SizeMismatch);
DETFORGE_ERROR(TooLarge);
DETFORGE_ERROR(ConfigError);
DETFORGE_ERROR(LinearAlgebraFailure);
DETFORGE_ERROR(InnerSolverFailure);

#undef DETFORGE_ERROR

}  // namespace detforge
