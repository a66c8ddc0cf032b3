#pragma once

#include <stdexcept>
#include <string>

namespace vfl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularAtZero : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct Unsupported : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NegativeCoefficient : Error { using Error::Error; };
struct ToleranceNotMet : Error { using Error::Error; };
struct SingularKernelOnTabulated : Error { using Error::Error; };
struct NonIntegrable : Error { using Error::Error; };
struct AccuracyLoss : Error { using Error::Error; };
struct SeriesDivergence : Error { using Error::Error; };
struct QuadratureStall : Error { using Error::Error; };
struct AliasingRisk : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };
struct LimitNotDetected : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace vfl
