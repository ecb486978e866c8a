#pragma once

#include <Eigen/Core>

#include "nsibf/data/frame.hpp"

namespace nsibf::data {

// Per-column min-max map to [0,1], fitted on training data only. Constant
// columns map to 0 and invert back to the constant.
struct Normalizer {
  Eigen::VectorXd x_min, x_max;
  Eigen::VectorXd u_min, u_max;

  static Normalizer fit(const SeriesFrame& frame);

  SeriesFrame transform(const SeriesFrame& frame) const;
  SeriesFrame inverse(const SeriesFrame& frame) const;

  Eigen::VectorXd transform_sensor_row(const Eigen::VectorXd& row) const;
  Eigen::VectorXd inverse_sensor_row(const Eigen::VectorXd& row) const;
};

}  // namespace nsibf::data
