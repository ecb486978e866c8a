#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "nsibf/data/frame.hpp"

namespace nsibf::data {

// Super-step stacking and sliding-window construction.
//
// A super-step groups `stack` consecutive raw rows; a training item anchored
// at raw offset a holds a window of `window_super` super-steps followed by
// the target super-step. Anchors advance by `stride` raw points, so the
// default stride == stack walks the non-overlapping partition one super-step
// at a time while stride == 1 emits densely overlapping items.
struct WindowSpec {
  std::size_t window_super = 1;  // l, in super-steps
  std::size_t stack = 1;         // s
  std::size_t stride = 0;        // raw points between anchors; 0 -> stack

  std::size_t effective_stride() const { return stride == 0 ? stack : stride; }
};

struct TrainingItem {
  Eigen::VectorXd x_prev;                // stacked sensors, last window block
  Eigen::VectorXd x_target;              // stacked sensors, block after window
  std::vector<Eigen::VectorXd> window;   // l blocks of [sensors; actuators]
  std::size_t anchor = 0;                // raw row of first window block
};

// Stacked sensor vector for raw rows [start, start + s).
Eigen::VectorXd stack_sensors(const SeriesFrame& frame, std::size_t start,
                              std::size_t s);

// Stacked [sensors; actuators] channel for raw rows [start, start + s).
Eigen::VectorXd stack_channels(const SeriesFrame& frame, std::size_t start,
                               std::size_t s);

// One label per complete super-step of the partition anchored at row 0;
// a super-step is anomalous if any constituent raw point is.
std::vector<std::uint8_t> stack_labels(const SeriesFrame& frame, std::size_t s);

std::vector<TrainingItem> make_windows(const SeriesFrame& frame,
                                       const WindowSpec& spec);

// Chronological split at floor(0.75 * T).
std::pair<SeriesFrame, SeriesFrame> split_train_val(const SeriesFrame& frame);

}  // namespace nsibf::data
