#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "nsibf/common.hpp"

namespace nsibf::sysid {

// Architecture and training settings for the g/f/h state-space network.
struct NetConfig {
  std::size_t sensor_dim = 0;    // Mx
  std::size_t actuator_dim = 0;  // Mu
  std::size_t stack = 1;         // s, raw points per super-step
  std::size_t state_dim = 2;     // m
  std::size_t window_super = 1;  // l, in super-steps
  std::size_t stride = 0;        // raw anchor stride for items; 0 -> stack

  std::vector<std::size_t> g_hidden = {64};
  std::vector<std::size_t> h_hidden = {64};
  std::vector<std::size_t> f_dense_hidden = {64};
  std::size_t f_lstm_layers = 1;
  std::size_t f_lstm_hidden = 64;

  double w1 = 0.45, w2 = 0.45, w3 = 0.1;

  std::size_t epochs = 100;
  std::size_t batch_size = 256;
  double learning_rate = 1e-3;
  double grad_clip = 5.0;
  std::uint64_t seed = 42;

  std::size_t obs_dim() const { return stack * sensor_dim; }      // s * Mx
  std::size_t channel_dim() const { return stack * (sensor_dim + actuator_dim); }
  std::size_t effective_stride() const { return stride == 0 ? stack : stride; }

  // Throws on structural violations; returns a human-readable warning for
  // soft ones (m not lower-dimensional), empty if none.
  std::string validate() const;

  nlohmann::ordered_json to_json() const;
  static NetConfig from_json(const nlohmann::json& j);
};

}  // namespace nsibf::sysid
