#include "bubblelab/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace bubblelab {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    fields.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return fields;
}

template <typename T>
bool parse_field(std::string_view field, T& value) {
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  return ec == std::errc() && ptr == end;
}

[[noreturn]] void malformed(long line, const std::string& what) {
  throw Error(ErrorKind::MalformedRow, "line " + std::to_string(line) + ": " + what, line);
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

SeriesTable read_csv(std::istream& in, const ExperimentParams& params, const CsvColumns& columns) {
  std::string line;
  long line_no = 0;
  // Skip leading blank lines and a UTF-8 byte-order mark.
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw Error(ErrorKind::MalformedRow, "missing header row", line_no);

  const auto header = split(line);
  int time_col = -1;
  int price_col = -1;
  std::vector<int> forecast_cols;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    const auto name = header[i];
    if (name == columns.time) {
      time_col = i;
    } else if (name == columns.price) {
      price_col = i;
    } else if (name.rfind(columns.forecast_prefix, 0) == 0) {
      int k = 0;
      if (parse_field(name.substr(columns.forecast_prefix.size()), k)) {
        if (k != static_cast<int>(forecast_cols.size()) + 1) {
          malformed(line_no, "forecast columns must be named " + columns.forecast_prefix + "1.." +
                                 columns.forecast_prefix + "H in order");
        }
        forecast_cols.push_back(i);
      }
    }
  }
  if (time_col < 0 || price_col < 0) {
    malformed(line_no, "header must name columns '" + columns.time + "' and '" + columns.price + "'");
  }

  std::vector<long> times;
  std::vector<double> prices;
  std::vector<double> forecasts;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      malformed(line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                             std::to_string(fields.size()));
    }
    long t = 0;
    double p = 0.0;
    if (!parse_field(fields[time_col], t)) malformed(line_no, "time index is not an integer");
    if (!parse_field(fields[price_col], p) || !std::isfinite(p)) malformed(line_no, "price is not a number");
    if (!times.empty() && t != times.back() + 1) {
      throw Error(ErrorKind::NonContiguous,
                  "line " + std::to_string(line_no) + ": time index " + std::to_string(t) + " does not follow " +
                      std::to_string(times.back()),
                  line_no);
    }
    if (!params.in_range(p)) {
      throw Error(ErrorKind::OutOfRange,
                  "line " + std::to_string(line_no) + ": price " + std::string(fields[price_col]) +
                      " outside [" + format_number(params.p_min) + ", " + format_number(params.p_max) + "]",
                  line_no);
    }
    for (const int c : forecast_cols) {
      double f = 0.0;
      if (!parse_field(fields[c], f) || !std::isfinite(f)) malformed(line_no, "forecast is not a number");
      forecasts.push_back(f);
    }
    times.push_back(t);
    prices.push_back(p);
  }
  if (prices.empty()) throw Error(ErrorKind::MalformedRow, "no data rows", line_no);

  SeriesTable table{PriceSeries(times.front(), Eigen::Map<const Eigen::VectorXd>(prices.data(), prices.size())),
                    std::nullopt};
  if (!forecast_cols.empty()) {
    const auto rows = static_cast<Eigen::Index>(prices.size());
    const auto cols = static_cast<Eigen::Index>(forecast_cols.size());
    table.forecasts = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        forecasts.data(), rows, cols);
  }
  return table;
}

SeriesTable load_csv(const std::filesystem::path& path, const ExperimentParams& params, const CsvColumns& columns) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return read_csv(in, params, columns);
}

void write_csv(std::ostream& out, const PriceSeries& prices, const Eigen::MatrixXd* forecasts) {
  if (forecasts && forecasts->rows() != prices.size()) {
    throw Error(ErrorKind::InvalidArgument, "forecast rows must match the price series length");
  }
  out << "t,price";
  if (forecasts) {
    for (Eigen::Index h = 0; h < forecasts->cols(); ++h) out << ",h" << (h + 1);
  }
  out << '\n';
  for (Eigen::Index i = 0; i < prices.size(); ++i) {
    out << (prices.t0() + i) << ',' << format_number(prices.values()(i));
    if (forecasts) {
      for (Eigen::Index h = 0; h < forecasts->cols(); ++h) out << ',' << format_number((*forecasts)(i, h));
    }
    out << '\n';
  }
}

void save_csv(const std::filesystem::path& path, const PriceSeries& prices, const Eigen::MatrixXd* forecasts) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  write_csv(out, prices, forecasts);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace bubblelab
