#pragma once

#include <stdexcept>
#include <string>

namespace fried {

#define FRIED_ERROR(NAME)                                              \
    struct NAME : std::runtime_error {                                 \
        explicit NAME(const std::string &msg) : std::runtime_error(std::string(#NAME) + ": " + msg) {} \
    }

FRIED_ERROR(UnknownPreset);
FRIED_ERROR(DimensionMismatch);
FRIED_ERROR(NotLiftable);
FRIED_ERROR(NegativeMultiplicity);
FRIED_ERROR(NotMaximalTorus);
FRIED_ERROR(NonSemisimpleAction);
FRIED_ERROR(NotRankOne);
FRIED_ERROR(EllipticClass);
FRIED_ERROR(NotScalar);
FRIED_ERROR(Infeasible);
FRIED_ERROR(NonSemisimpleBAction);
FRIED_ERROR(RequiresAdmissibleMetric);
FRIED_ERROR(OddDimension);
FRIED_ERROR(NonUniformNorm);
FRIED_ERROR(NotStabilizing);
FRIED_ERROR(BasisMismatch);
FRIED_ERROR(RequiresThetaInvariant);
FRIED_ERROR(NotScalarCasimir);
FRIED_ERROR(WrongBranch);
FRIED_ERROR(NotIrreducible);
FRIED_ERROR(ParseError);
FRIED_ERROR(SchemaVersionMismatch);
FRIED_ERROR(InvariantViolation);
FRIED_ERROR(NonInvertibleGenerator);
FRIED_ERROR(Overflow);
FRIED_ERROR(EvaluationAtPole);

#undef FRIED_ERROR

} // namespace fried
