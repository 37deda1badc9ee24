#pragma once

#include <stdexcept>
#include <string>

namespace sta {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter / construction failures
struct NonPositiveParameter : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct PositivityViolated : Error { using Error::Error; };
struct InvalidMode : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };

// Solver failures
struct NoBracket : Error { using Error::Error; };
struct NoSolution : Error { using Error::Error; };
struct BlowUp : Error { using Error::Error; };
struct StepUnderflow : Error { using Error::Error; };
struct NegativeFrequencyRegion : Error { using Error::Error; };

// Grid propagation failures
struct GridTooSmall : Error { using Error::Error; };
struct NormDrift : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };

} // namespace sta
