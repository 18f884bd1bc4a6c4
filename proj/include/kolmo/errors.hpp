#pragma once

#include <stdexcept>
#include <string>

namespace kolmo {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input rejected before any numerics ran (bad shapes, ranges, preconditions).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed on otherwise valid input.
class NumericalError : public Error {
public:
    using Error::Error;
};

#define KOLMO_DEFINE_ERROR(Name, Base)         \
    class Name : public Base {                 \
    public:                                    \
        using Base::Base;                      \
    }

// structure
KOLMO_DEFINE_ERROR(BlockShapeError, ValidationError);
KOLMO_DEFINE_ERROR(MonotonicityError, ValidationError);
KOLMO_DEFINE_ERROR(RankError, ValidationError);
KOLMO_DEFINE_ERROR(SparsityError, ValidationError);
KOLMO_DEFINE_ERROR(DimensionError, ValidationError);
KOLMO_DEFINE_ERROR(IndexError, ValidationError);
KOLMO_DEFINE_ERROR(NotHomogeneousError, ValidationError);

// calculus / connect
KOLMO_DEFINE_ERROR(FieldIndexError, ValidationError);
KOLMO_DEFINE_ERROR(NotRankOneStructure, ValidationError);
KOLMO_DEFINE_ERROR(NotScalarBlocks, ValidationError);
KOLMO_DEFINE_ERROR(EpsilonExceeded, ValidationError);
KOLMO_DEFINE_ERROR(InsufficientRegularity, ValidationError);
KOLMO_DEFINE_ERROR(EvaluationError, NumericalError);
KOLMO_DEFINE_ERROR(StepUnderflowError, NumericalError);
KOLMO_DEFINE_ERROR(NoConvergence, NumericalError);

// holder
KOLMO_DEFINE_ERROR(DomainError, ValidationError);
KOLMO_DEFINE_ERROR(OutsideDomainError, ValidationError);
KOLMO_DEFINE_ERROR(RangeError, ValidationError);

// harness
KOLMO_DEFINE_ERROR(InsufficientSamples, NumericalError);
KOLMO_DEFINE_ERROR(DegenerateSamples, NumericalError);

#undef KOLMO_DEFINE_ERROR

} // namespace kolmo
