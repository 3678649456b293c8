/* Exception hierarchy for the buildings library.

   Every failure mode that is part of an operation's contract gets its own
   type, so callers (and tests) can catch precisely.  All carry a message
   naming the offending indices or witnesses. */

#pragma once

#include <stdexcept>
#include <string>

namespace buildings {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* Input data fails a structural precondition (bad matrix shape, bad JSON,
   indices out of range, ...).  CLI maps these to exit code 2. */
struct InputError : Error {
  using Error::Error;
};

// cartan
struct DiagonalNotTwo : InputError { using InputError::InputError; };
struct PositiveOffDiagonal : InputError { using InputError::InputError; };
struct ZeroAsymmetry : InputError { using InputError::InputError; };
struct NotSymmetrizable : InputError { using InputError::InputError; };

// coxeter
struct IndexOutOfRange : InputError { using InputError::InputError; };
struct SystemMismatch : InputError { using InputError::InputError; };
struct BudgetExceeded : Error { using Error::Error; };

// fingroup
struct UnsupportedParameters : InputError { using InputError::InputError; };
struct NotAGroup : InputError { using InputError::InputError; };
struct NotASubgroup : InputError { using InputError::InputError; };
struct NotInBWB : Error { using Error::Error; };

// measure
struct OrdinaryViolation : InputError { using InputError::InputError; };
struct ContextMismatch : InputError { using InputError::InputError; };
struct VanishingMeasure : Error { using Error::Error; };
struct FieldMismatch : InputError { using InputError::InputError; };
struct DivisionByZero : Error { using Error::Error; };

// simplicial
struct MalformedSimplicialSet : InputError { using InputError::InputError; };
struct NotAnAction : InputError { using InputError::InputError; };
struct CrossedConditionViolated : Error { using Error::Error; };

// davis
struct WrongProvenance : InputError { using InputError::InputError; };

// cosheaf
struct NotEquivariant : Error { using Error::Error; };
struct ProductNotSubgroup : Error { using Error::Error; };
struct NotATree : InputError { using InputError::InputError; };
struct VarianceMismatch : InputError { using InputError::InputError; };
struct NotAModule : InputError { using InputError::InputError; };
struct AxiomViolation : Error { using Error::Error; };

// hecke
struct NonInvertibleParameter : InputError { using InputError::InputError; };

// cli / io
struct ParseError : InputError { using InputError::InputError; };

}  // namespace buildings
