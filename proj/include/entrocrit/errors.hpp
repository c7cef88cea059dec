#pragma once

#include <stdexcept>

namespace entrocrit {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SizeLimitError : Error { using Error::Error; };
struct NotHermitianError : Error { using Error::Error; };
struct NoConvergenceError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct NegativeEntryError : Error { using Error::Error; };
struct IndexOutOfRangeError : Error { using Error::Error; };
struct ParameterRangeError : Error { using Error::Error; };
struct EvenDimensionError : Error { using Error::Error; };
struct MultiplicityNotDivisibleError : Error { using Error::Error; };
struct BudgetExceededError : Error { using Error::Error; };
struct NotNormalizedError : Error { using Error::Error; };
struct NotFullRankError : Error { using Error::Error; };
struct CertificateMismatchError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

}  // namespace entrocrit
