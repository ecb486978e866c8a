#include "nsibf/sysid/config.hpp"

namespace nsibf::sysid {

std::string NetConfig::validate() const {
  if (sensor_dim == 0) throw ValidationError("config: sensor_dim must be >= 1");
  if (state_dim == 0) throw ValidationError("config: state_dim must be >= 1");
  if (window_super == 0) throw ValidationError("config: window must be >= 1");
  if (stack == 0) throw ValidationError("config: stack must be >= 1");
  if (w1 < 0 || w2 < 0 || w3 < 0 || (w1 == 0 && w2 == 0 && w3 == 0))
    throw ValidationError("config: loss weights must be >= 0 and not all zero");
  if (f_lstm_layers == 0) throw ValidationError("config: f_lstm_layers must be >= 1");
  if (f_lstm_hidden == 0) throw ValidationError("config: f_lstm_hidden must be >= 1");
  if (batch_size == 0) throw ValidationError("config: batch_size must be >= 1");
  if (state_dim >= obs_dim() && obs_dim() > 1) {
    return "state_dim (" + std::to_string(state_dim) +
           ") is not lower-dimensional than the stacked observation (" +
           std::to_string(obs_dim()) + ")";
  }
  return {};
}

nlohmann::ordered_json NetConfig::to_json() const {
  nlohmann::ordered_json j;
  j["sensor_dim"] = sensor_dim;
  j["actuator_dim"] = actuator_dim;
  j["stack"] = stack;
  j["state_dim"] = state_dim;
  j["window_super"] = window_super;
  j["stride"] = stride;
  j["g_hidden"] = g_hidden;
  j["h_hidden"] = h_hidden;
  j["f_dense_hidden"] = f_dense_hidden;
  j["f_lstm_layers"] = f_lstm_layers;
  j["f_lstm_hidden"] = f_lstm_hidden;
  j["w1"] = w1;
  j["w2"] = w2;
  j["w3"] = w3;
  j["epochs"] = epochs;
  j["batch_size"] = batch_size;
  j["learning_rate"] = learning_rate;
  j["grad_clip"] = grad_clip;
  j["seed"] = seed;
  return j;
}

NetConfig NetConfig::from_json(const nlohmann::json& j) {
  NetConfig c;
  c.sensor_dim = j.at("sensor_dim").get<std::size_t>();
  c.actuator_dim = j.at("actuator_dim").get<std::size_t>();
  c.stack = j.at("stack").get<std::size_t>();
  c.state_dim = j.at("state_dim").get<std::size_t>();
  c.window_super = j.at("window_super").get<std::size_t>();
  c.stride = j.value("stride", std::size_t{0});
  c.g_hidden = j.at("g_hidden").get<std::vector<std::size_t>>();
  c.h_hidden = j.at("h_hidden").get<std::vector<std::size_t>>();
  c.f_dense_hidden = j.at("f_dense_hidden").get<std::vector<std::size_t>>();
  c.f_lstm_layers = j.at("f_lstm_layers").get<std::size_t>();
  c.f_lstm_hidden = j.at("f_lstm_hidden").get<std::size_t>();
  c.w1 = j.at("w1").get<double>();
  c.w2 = j.at("w2").get<double>();
  c.w3 = j.at("w3").get<double>();
  c.epochs = j.at("epochs").get<std::size_t>();
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.grad_clip = j.at("grad_clip").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace nsibf::sysid
