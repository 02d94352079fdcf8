#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bubblelab {

enum class ErrorKind {
  InvalidArgument,
  NonPositiveExcess,
  TooFewPoints,
  DegenerateRegressor,
  FiniteHorizonSingularity,
  MalformedRow,
  NonContiguous,
  OutOfRange,
  InsufficientHistory,
  WrongForecastCount,
  NoValidCells,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library is reported through this type. `index()`
/// carries the offending time index (or CSV line number for ingestion
/// errors) when there is one.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message, std::optional<long> index = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<long> index() const noexcept { return index_; }

private:
  ErrorKind kind_;
  std::optional<long> index_;
};

}  // namespace bubblelab
