#include "nsibf/data/windows.hpp"

namespace nsibf::data {

Eigen::VectorXd stack_sensors(const SeriesFrame& frame, std::size_t start,
                              std::size_t s) {
  const std::size_t mx = frame.sensors();
  Eigen::VectorXd out(static_cast<Eigen::Index>(s * mx));
  for (std::size_t j = 0; j < s; ++j) {
    out.segment(static_cast<Eigen::Index>(j * mx), static_cast<Eigen::Index>(mx)) =
        frame.X.row(static_cast<Eigen::Index>(start + j)).transpose();
  }
  return out;
}

Eigen::VectorXd stack_channels(const SeriesFrame& frame, std::size_t start,
                               std::size_t s) {
  const std::size_t mx = frame.sensors();
  const std::size_t mu = frame.actuators();
  Eigen::VectorXd out(static_cast<Eigen::Index>(s * (mx + mu)));
  for (std::size_t j = 0; j < s; ++j) {
    out.segment(static_cast<Eigen::Index>(j * mx), static_cast<Eigen::Index>(mx)) =
        frame.X.row(static_cast<Eigen::Index>(start + j)).transpose();
  }
  for (std::size_t j = 0; j < s; ++j) {
    out.segment(static_cast<Eigen::Index>(s * mx + j * mu),
                static_cast<Eigen::Index>(mu)) =
        frame.U.row(static_cast<Eigen::Index>(start + j)).transpose();
  }
  return out;
}

std::vector<std::uint8_t> stack_labels(const SeriesFrame& frame, std::size_t s) {
  if (s == 0) throw ValidationError("stack_labels: stack must be >= 1");
  const std::size_t n_super = frame.rows() / s;
  std::vector<std::uint8_t> out(n_super, 0);
  if (!frame.has_labels) return out;
  for (std::size_t b = 0; b < n_super; ++b) {
    for (std::size_t j = 0; j < s; ++j) {
      if (frame.labels[b * s + j]) {
        out[b] = 1;
        break;
      }
    }
  }
  return out;
}

std::vector<TrainingItem> make_windows(const SeriesFrame& frame,
                                       const WindowSpec& spec) {
  if (spec.stack == 0 || spec.window_super == 0)
    throw ValidationError("make_windows: stack and window must be >= 1");
  const std::size_t s = spec.stack;
  const std::size_t l = spec.window_super;
  const std::size_t stride = spec.effective_stride();
  const std::size_t need = (l + 1) * s;
  if (frame.rows() < need) {
    throw ValidationError("make_windows: insufficient data (" +
                          std::to_string(frame.rows()) + " rows, need " +
                          std::to_string(need) + ")");
  }
  std::vector<TrainingItem> items;
  for (std::size_t a = 0; a + need <= frame.rows(); a += stride) {
    TrainingItem item;
    item.anchor = a;
    item.window.reserve(l);
    for (std::size_t k = 0; k < l; ++k) {
      item.window.push_back(stack_channels(frame, a + k * s, s));
    }
    item.x_prev = stack_sensors(frame, a + (l - 1) * s, s);
    item.x_target = stack_sensors(frame, a + l * s, s);
    items.push_back(std::move(item));
  }
  return items;
}

std::pair<SeriesFrame, SeriesFrame> split_train_val(const SeriesFrame& frame) {
  if (frame.rows() < 8) {
    throw ValidationError("split_train_val: insufficient data (" +
                          std::to_string(frame.rows()) + " rows)");
  }
  const std::size_t cut =
      static_cast<std::size_t>(0.75 * static_cast<double>(frame.rows()));
  return {frame.head(cut), frame.tail_from(cut)};
}

}  // namespace nsibf::data
