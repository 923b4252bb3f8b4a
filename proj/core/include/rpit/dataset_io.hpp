#pragma once

// CSV ingestion for censored datasets.
//
// Bivariate files carry four columns per row:
//   right-censored:    x, dx, y, dy        with dx, dy in {0, 1}
//   interval-censored: lx, rx, ly, ry      with the literal token `inf` for
//                      +infinity and l == r denoting an exact value
// Single-margin files carry the first two columns only. Blank lines and
// lines starting with '#' are skipped. Format auto-detection accepts a file
// only when exactly one interpretation is valid; ambiguity is an error the
// caller resolves by passing an explicit type.

#include <string>
#include <vector>

#include "rpit/censoring.hpp"

namespace rpit {

enum class DatasetType { Auto, Right, Interval };

struct BivariateDataset {
  DatasetType type = DatasetType::Right;  // resolved: Right or Interval
  BivariateRightData right;
  BivariateIntervalData interval;
};

struct MarginDataset {
  DatasetType type = DatasetType::Right;
  std::vector<RightObs> right;
  std::vector<IntervalObs> interval;
};

// Throws InvalidDatasetError with row/column diagnostics (and, for Auto,
// the failure of each attempted interpretation).
BivariateDataset parse_bivariate_csv(const std::string& text, DatasetType hint);

// Accepts 2-column files directly and 4-column files via `use_y_margin`.
MarginDataset parse_margin_csv(const std::string& text, DatasetType hint, bool use_y_margin);

// One margin of a parsed bivariate dataset.
MarginDataset margin_of(const BivariateDataset& data, bool y_margin);

// Doubles rendered with 17 significant digits; all numeric file output goes
// through this so determinism is checkable byte for byte.
std::string format_g17(double value);

}  // namespace rpit
