#pragma once

#include <stdexcept>
#include <string>

namespace gengeo {

// Base class for all engine errors.  Errors caused by bad user input derive
// from UserError; InternalError signals a broken internal invariant and maps
// to a distinct process exit code in the command-line driver.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UserError : Error {
    using Error::Error;
};

struct InternalError : Error {
    using Error::Error;
};

#define GENGEO_ERROR(NAME, BASE)                                \
    struct NAME : BASE {                                        \
        explicit NAME(const std::string& msg)                   \
            : BASE(std::string(#NAME) + ": " + msg) {}          \
    }

GENGEO_ERROR(DivisionByZero, UserError);
GENGEO_ERROR(UnknownVariable, UserError);
GENGEO_ERROR(SymbolConflict, UserError);
GENGEO_ERROR(FrameMismatch, UserError);
GENGEO_ERROR(BadArgument, UserError);
GENGEO_ERROR(NotClosed, UserError);
GENGEO_ERROR(CocycleViolation, UserError);
GENGEO_ERROR(ZeroSpinor, UserError);
GENGEO_ERROR(NotInSubbundle, UserError);
GENGEO_ERROR(NonClosedSymplecticForm, UserError);
GENGEO_ERROR(NotPoisson, UserError);
GENGEO_ERROR(NotHolomorphic, UserError);
GENGEO_ERROR(DegeneratePair, UserError);
GENGEO_ERROR(DegreeBoundViolation, UserError);
GENGEO_ERROR(NonCommutingHiggs, UserError);
GENGEO_ERROR(ConstraintViolation, UserError);
GENGEO_ERROR(NotDolbeaultExact, UserError);
GENGEO_ERROR(NonFiniteState, UserError);
GENGEO_ERROR(DegenerateEigenbundle, UserError);
GENGEO_ERROR(IntegrabilityFailure, UserError);
GENGEO_ERROR(ParseError, UserError);

#undef GENGEO_ERROR

} // namespace gengeo
