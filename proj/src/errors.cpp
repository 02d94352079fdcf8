#include "bubblelab/errors.hpp"

namespace bubblelab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonPositiveExcess: return "NonPositiveExcess";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::DegenerateRegressor: return "DegenerateRegressor";
    case ErrorKind::FiniteHorizonSingularity: return "FiniteHorizonSingularity";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::NonContiguous: return "NonContiguous";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InsufficientHistory: return "InsufficientHistory";
    case ErrorKind::WrongForecastCount: return "WrongForecastCount";
    case ErrorKind::NoValidCells: return "NoValidCells";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<long> index)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), index_(index) {}

}  // namespace bubblelab
