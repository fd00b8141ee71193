#pragma once

#include <string>
#include <vector>

namespace gyrospin {

// Named time series sharing one time axis. Column names carry their unit
// suffix (e.g. "t_s", "mean_gamma_rad") so they can be written as-is.
struct Trajectory {
  std::vector<double> times;  // s
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  void add(const std::string& name, std::vector<double> values);
  const std::vector<double>& get(const std::string& name) const;
  bool has(const std::string& name) const;
};

// Rows of equal length under named (unit-suffixed) columns.
struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::vector<double> column(const std::string& name) const;
};

// max|cand - ref| over the peak-to-peak range of ref
double normalized_deviation(const std::vector<double>& ref, const std::vector<double>& cand);

}  // namespace gyrospin
