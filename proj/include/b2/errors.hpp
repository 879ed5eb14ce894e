// Error types thrown by the moment/closure library.
#pragma once

#include <stdexcept>
#include <string>

namespace b2 {

struct B2Error : std::runtime_error {
  explicit B2Error(const std::string& msg) : std::runtime_error(msg) {}
};

// moment construction / realizability
struct NonPositiveEnergy : B2Error { using B2Error::B2Error; };
struct TraceMismatch : B2Error { using B2Error::B2Error; };
struct InvalidRotation : B2Error { using B2Error::B2Error; };
// lambda_i ~ 0 with F_i != 0, or negative eigenvalue: outside the moment cone entirely
struct BoundaryViolation : B2Error { using B2Error::B2Error; };
struct NotRealizable : B2Error { using B2Error::B2Error; };

// beta shapes / ansatz
struct DomainError : B2Error { using B2Error::B2Error; };
struct DiracEvaluation : B2Error { using B2Error::B2Error; };
struct UnsupportedOrder : B2Error { using B2Error::B2Error; };
struct Unrealizable1D : B2Error { using B2Error::B2Error; };
struct ZeroWeightInconsistency : B2Error { using B2Error::B2Error; };

// hyperbolicity
struct DegenerateState : B2Error { using B2Error::B2Error; };
struct ClosureFailure : B2Error { using B2Error::B2Error; };

// I/O
struct ParseError : B2Error { using B2Error::B2Error; };

}  // namespace b2
