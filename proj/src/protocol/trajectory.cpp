#include "gyrospin/protocol/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gyrospin/errors.hpp"

namespace gyrospin {

void Trajectory::add(const std::string& name, std::vector<double> values) {
  if (values.size() != times.size())
    throw DimensionMismatch("series '" + name + "' does not match the time axis");
  if (has(name)) throw InvalidParameter("duplicate series '" + name + "'");
  names.push_back(name);
  columns.push_back(std::move(values));
}

bool Trajectory::has(const std::string& name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

const std::vector<double>& Trajectory::get(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InvalidParameter("no series named '" + name + "'");
  return columns[size_t(it - names.begin())];
}

void SweepTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw DimensionMismatch("sweep row width mismatch");
  rows.push_back(std::move(row));
}

std::vector<double> SweepTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw InvalidParameter("no column named '" + name + "'");
  const size_t k = size_t(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[k]);
  return out;
}

double normalized_deviation(const std::vector<double>& ref, const std::vector<double>& cand) {
  if (ref.size() != cand.size() || ref.empty())
    throw DimensionMismatch("deviation needs equal, non-empty series");
  const auto [lo, hi] = std::minmax_element(ref.begin(), ref.end());
  double worst = 0.0;
  for (size_t k = 0; k < ref.size(); ++k) worst = std::max(worst, std::abs(cand[k] - ref[k]));
  const double span = *hi - *lo;
  if (span == 0.0) return worst == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return worst / span;
}

}  // namespace gyrospin
