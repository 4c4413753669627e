#pragma once

#include <stdexcept>
#include <string>

namespace unorm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define UNORM_ERROR(Name)                         \
  struct Name : Error {                           \
    explicit Name(const std::string& what)        \
        : Error(std::string(#Name ": ") + what) {} \
  }

UNORM_ERROR(DimensionMismatch);
UNORM_ERROR(NotAUnit);
UNORM_ERROR(MissingRepresentation);
UNORM_ERROR(InvalidAlgebra);
UNORM_ERROR(UnknownAlgebra);
UNORM_ERROR(SamplingFailure);
UNORM_ERROR(NoNormalizedSlice);
UNORM_ERROR(SliceNotConstant);
UNORM_ERROR(NotSymmetric);
UNORM_ERROR(PathCrossesNonUnits);
UNORM_ERROR(QuadratureNonConvergent);
UNORM_ERROR(KernelComponent);
UNORM_ERROR(OutOfDomain);
UNORM_ERROR(NonPositiveLeading);
UNORM_ERROR(NotAnIdeal);
UNORM_ERROR(IdealContainsUnity);
UNORM_ERROR(DeltaOutOfRange);
UNORM_ERROR(DegenerateCoordinate);
UNORM_ERROR(SpeedOutOfRange);

#undef UNORM_ERROR

}  // namespace unorm
