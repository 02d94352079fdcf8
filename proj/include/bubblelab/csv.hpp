#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "bubblelab/series.hpp"

namespace bubblelab {

/// Column naming for series CSV files: `t,price[,h1..hH]`.
struct CsvColumns {
  std::string time = "t";
  std::string price = "price";
  std::string forecast_prefix = "h";
};

/// A price series plus the per-trader forecast columns when the file has them.
/// Forecast row i belongs to time t0 + i and holds each trader's p^h_{t+1}.
struct SeriesTable {
  PriceSeries prices;
  std::optional<Eigen::MatrixXd> forecasts;
};

SeriesTable read_csv(std::istream& in, const ExperimentParams& params, const CsvColumns& columns = {});
SeriesTable load_csv(const std::filesystem::path& path, const ExperimentParams& params,
                     const CsvColumns& columns = {});

void write_csv(std::ostream& out, const PriceSeries& prices, const Eigen::MatrixXd* forecasts = nullptr);
void save_csv(const std::filesystem::path& path, const PriceSeries& prices,
              const Eigen::MatrixXd* forecasts = nullptr);

/// Machine-file number format: 17 significant digits, round-trips exactly.
std::string format_number(double value);
/// Human-readable fixed format, e.g. 2 decimals for price tables.
std::string format_fixed(double value, int decimals);

}  // namespace bubblelab
