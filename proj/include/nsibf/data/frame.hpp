#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "nsibf/common.hpp"

namespace nsibf::data {

// Aligned sensor/actuator matrices over discrete time, with optional labels.
struct SeriesFrame {
  std::vector<std::string> sensor_names;
  std::vector<std::string> actuator_names;
  Eigen::MatrixXd X;                 // T x Mx
  Eigen::MatrixXd U;                 // T x Mu (Mu may be 0)
  std::vector<std::uint8_t> labels;  // empty when has_labels == false
  bool has_labels = false;

  std::size_t rows() const { return static_cast<std::size_t>(X.rows()); }
  std::size_t sensors() const { return static_cast<std::size_t>(X.cols()); }
  std::size_t actuators() const { return static_cast<std::size_t>(U.cols()); }

  SeriesFrame head(std::size_t n) const;
  SeriesFrame tail_from(std::size_t start) const;

  void validate() const;  // finite values, consistent lengths, unique names
};

struct CsvSchema {
  std::vector<std::string> sensors;
  std::vector<std::string> actuators;
  std::string label;  // empty = no label column

  static CsvSchema from_json_file(const std::string& path);
};

// Header row required. Throws ValidationError naming offending rows/columns
// on missing columns, ragged rows, or non-numeric / non-finite cells.
SeriesFrame load_csv(const std::string& path, const CsvSchema& schema);

// Standard dataset layout `t,<sensors...>,<actuators...>[,label]`.
void write_csv(const std::string& path, const SeriesFrame& frame);

}  // namespace nsibf::data
