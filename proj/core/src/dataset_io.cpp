#include "rpit/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>

#include "rpit/errors.hpp"

namespace rpit {

namespace {

struct Cell {
  std::string text;
  int row = 0;  // 1-based source line
  int col = 0;  // 1-based column
};

std::string trimmed(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void cell_error(const Cell& cell, const std::string& reason) {
  throw InvalidDatasetError("row " + std::to_string(cell.row) + ", column " +
                            std::to_string(cell.col) + ": " + reason + " (got '" + cell.text +
                            "')");
}

// Lines -> rows of trimmed cells, all with the same column count.
std::vector<std::vector<Cell>> tokenize(const std::string& text, int expected_cols) {
  std::vector<std::vector<Cell>> rows;
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trimmed(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<Cell> cells;
    std::string field;
    std::istringstream fields(t);
    int col = 0;
    while (std::getline(fields, field, ',')) {
      ++col;
      cells.push_back({trimmed(field), lineno, col});
    }
    if (static_cast<int>(cells.size()) != expected_cols) {
      throw InvalidDatasetError("row " + std::to_string(lineno) + ": expected " +
                                std::to_string(expected_cols) + " columns, found " +
                                std::to_string(cells.size()));
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw InvalidDatasetError("no data rows");
  return rows;
}

double parse_finite(const Cell& cell) {
  double value = 0.0;
  const char* begin = cell.text.data();
  const char* end = begin + cell.text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    cell_error(cell, "expected a finite number");
  return value;
}

RightObs parse_right_obs(const Cell& value_cell, const Cell& flag_cell) {
  const double time = parse_finite(value_cell);
  if (time < 0.0) cell_error(value_cell, "time must be >= 0");
  if (flag_cell.text != "0" && flag_cell.text != "1")
    cell_error(flag_cell, "expected event indicator 0 or 1");
  return {time, flag_cell.text == "1"};
}

IntervalObs parse_interval_obs(const Cell& left_cell, const Cell& right_cell) {
  const double left = parse_finite(left_cell);
  if (left < 0.0) cell_error(left_cell, "left endpoint must be >= 0");
  double right;
  if (right_cell.text == "inf") {
    right = std::numeric_limits<double>::infinity();
  } else {
    right = parse_finite(right_cell);
    if (right < 0.0) cell_error(right_cell, "right endpoint must be >= 0");
  }
  if (left > right) cell_error(right_cell, "requires left <= right");

  if (std::isinf(right)) return IntervalObs::right_censored(left);
  if (left == right) return IntervalObs::exact(left);
  if (left == 0.0) return IntervalObs::left_censored(right);
  return IntervalObs::interval(left, right);
}

struct Interpretations {
  std::optional<BivariateRightData> right;
  std::string right_error;
  std::optional<BivariateIntervalData> interval;
  std::string interval_error;
};

Interpretations interpret(const std::vector<std::vector<Cell>>& rows, bool want_right,
                          bool want_interval) {
  Interpretations out;
  const bool bivariate = rows.front().size() == 4;
  if (want_right) {
    try {
      BivariateRightData data;
      for (const auto& cells : rows) {
        data.x.push_back(parse_right_obs(cells[0], cells[1]));
        if (bivariate) data.y.push_back(parse_right_obs(cells[2], cells[3]));
      }
      validate(data.x);
      if (bivariate) validate(data.y);
      out.right = std::move(data);
    } catch (const InvalidDatasetError& e) {
      out.right_error = e.what();
    }
  }
  if (want_interval) {
    try {
      BivariateIntervalData data;
      for (const auto& cells : rows) {
        data.x.push_back(parse_interval_obs(cells[0], cells[1]));
        if (bivariate) data.y.push_back(parse_interval_obs(cells[2], cells[3]));
      }
      validate(data.x);
      if (bivariate) validate(data.y);
      out.interval = std::move(data);
    } catch (const InvalidDatasetError& e) {
      out.interval_error = e.what();
    }
  }
  return out;
}

// Resolves the hint against the interpretations (throws on failure or
// ambiguity) and returns the winning type.
DatasetType resolve(const Interpretations& in, DatasetType hint) {
  if (hint == DatasetType::Right) {
    if (!in.right) throw InvalidDatasetError("right-censored parse failed: " + in.right_error);
    return DatasetType::Right;
  }
  if (hint == DatasetType::Interval) {
    if (!in.interval)
      throw InvalidDatasetError("interval-censored parse failed: " + in.interval_error);
    return DatasetType::Interval;
  }
  if (in.right && in.interval)
    throw InvalidDatasetError(
        "ambiguous file: valid as both right-censored and interval-censored; pass an explicit "
        "type");
  if (in.right) return DatasetType::Right;
  if (in.interval) return DatasetType::Interval;
  throw InvalidDatasetError("file matches no supported format; as right-censored: " +
                            in.right_error + "; as interval-censored: " + in.interval_error);
}

}  // namespace

BivariateDataset parse_bivariate_csv(const std::string& text, DatasetType hint) {
  const auto rows = tokenize(text, 4);
  Interpretations in =
      interpret(rows, hint != DatasetType::Interval, hint != DatasetType::Right);
  BivariateDataset out;
  out.type = resolve(in, hint);
  if (out.type == DatasetType::Right)
    out.right = std::move(*in.right);
  else
    out.interval = std::move(*in.interval);
  return out;
}

MarginDataset margin_of(const BivariateDataset& data, bool y_margin) {
  MarginDataset out;
  out.type = data.type;
  if (data.type == DatasetType::Right)
    out.right = y_margin ? data.right.y : data.right.x;
  else
    out.interval = y_margin ? data.interval.y : data.interval.x;
  return out;
}

MarginDataset parse_margin_csv(const std::string& text, DatasetType hint, bool use_y_margin) {
  // Peek at the first data row to decide between 2- and 4-column layout.
  std::istringstream stream(text);
  std::string line;
  int cols = 0;
  while (std::getline(stream, line)) {
    const std::string t = trimmed(line);
    if (t.empty() || t.front() == '#') continue;
    cols = 1 + static_cast<int>(std::count(t.begin(), t.end(), ','));
    break;
  }
  if (cols == 4) return margin_of(parse_bivariate_csv(text, hint), use_y_margin);

  const auto rows = tokenize(text, 2);
  Interpretations in =
      interpret(rows, hint != DatasetType::Interval, hint != DatasetType::Right);
  MarginDataset out;
  out.type = resolve(in, hint);
  if (out.type == DatasetType::Right)
    out.right = std::move(in.right->x);
  else
    out.interval = std::move(in.interval->x);
  return out;
}

std::string format_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace rpit
