#pragma once

#include <stdexcept>

namespace wcec {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct LayoutMismatch : Error { using Error::Error; };
struct DegenerateSample : Error { using Error::Error; };
struct FitDivergence : Error { using Error::Error; };
struct SkewnessOutOfRange : Error { using Error::Error; };
struct NegativeResidualVariance : Error { using Error::Error; };
struct MissingTransition : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct TooFewBins : Error { using Error::Error; };

} // namespace wcec
