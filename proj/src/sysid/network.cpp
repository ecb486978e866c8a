#include "nsibf/sysid/network.hpp"

namespace nsibf::sysid {

NetworkDef NetworkDef::build(const NetConfig& cfg, nn::ParamStore& P) {
  NetworkDef def;
  def.g = nn::make_mlp(P, "g", cfg.obs_dim(), cfg.g_hidden, cfg.state_dim);
  def.h = nn::make_mlp(P, "h", cfg.state_dim, cfg.h_hidden, cfg.obs_dim());
  def.f_lstm =
      nn::make_lstm(P, "f", cfg.channel_dim(), cfg.f_lstm_hidden, cfg.f_lstm_layers);
  def.f_dense = nn::make_mlp(P, "f", cfg.state_dim + cfg.f_lstm_hidden,
                             cfg.f_dense_hidden, cfg.state_dim);
  return def;
}

void init_params(const NetworkDef& def, nn::ParamStore& P, std::uint64_t seed) {
  Rng rng(seed);
  nn::init_mlp(P, def.g, rng);
  nn::init_mlp(P, def.h, rng);
  nn::init_lstm(P, def.f_lstm, rng);
  nn::init_mlp(P, def.f_dense, rng);
}

ForwardOut model_forward(const nn::ParamStore& P, const NetworkDef& def,
                         const data::TrainingItem& item, ModelTape* tape) {
  ForwardOut out;
  out.z_prev = nn::mlp_forward(P, def.g, item.x_prev, tape ? &tape->g : nullptr);
  out.x_rec = nn::mlp_forward(P, def.h, out.z_prev, tape ? &tape->h_rec : nullptr);
  const Eigen::VectorXd ctx =
      nn::lstm_forward(P, def.f_lstm, item.window, tape ? &tape->lstm : nullptr);
  Eigen::VectorXd zin(out.z_prev.size() + ctx.size());
  zin << out.z_prev, ctx;
  out.z_next = nn::mlp_forward(P, def.f_dense, zin, tape ? &tape->f_dense : nullptr);
  out.x_pred = nn::mlp_forward(P, def.h, out.z_next, tape ? &tape->h_pred : nullptr);
  return out;
}

double item_loss(const NetConfig& cfg, const ForwardOut& f,
                 const data::TrainingItem& item) {
  return cfg.w1 * (item.x_prev - f.x_rec).squaredNorm() +
         cfg.w2 * (item.x_target - f.x_pred).squaredNorm() +
         cfg.w3 * (f.z_next - f.z_prev).squaredNorm();
}

double batch_loss(const nn::ParamStore& P, const NetworkDef& def,
                  const NetConfig& cfg,
                  const std::vector<data::TrainingItem>& items) {
  if (items.empty()) throw ValidationError("loss: empty batch");
  double sum = 0.0;
  for (const auto& item : items) {
    sum += item_loss(cfg, model_forward(P, def, item), item);
  }
  return sum / static_cast<double>(items.size());
}

OutputGrads loss_output_grads(const NetConfig& cfg, const ForwardOut& f,
                              const data::TrainingItem& item) {
  OutputGrads og;
  og.d_x_rec = 2.0 * cfg.w1 * (f.x_rec - item.x_prev);
  og.d_x_pred = 2.0 * cfg.w2 * (f.x_pred - item.x_target);
  const Eigen::VectorXd dz = 2.0 * cfg.w3 * (f.z_next - f.z_prev);
  og.d_z_next_direct = dz;
  og.d_z_prev_direct = -dz;
  return og;
}

void model_backward(const nn::ParamStore& P, const NetworkDef& def,
                    const ModelTape& tape, const ForwardOut& fwd,
                    const OutputGrads& og, double scale, Eigen::VectorXd& grad) {
  // Backprop is linear in the output gradients, so scaling them up front
  // yields the scaled parameter contribution without a per-item buffer.
  const Eigen::VectorXd d_x_pred = scale * og.d_x_pred;
  const Eigen::VectorXd d_x_rec = scale * og.d_x_rec;

  // prediction branch: h(z_next)
  const Eigen::VectorXd d_z_next_h =
      nn::mlp_backward(P, def.h, tape.h_pred, d_x_pred, grad);
  const Eigen::VectorXd d_z_next = d_z_next_h + scale * og.d_z_next_direct;

  // transition: f_dense([z_prev; ctx]) and the LSTM context
  const Eigen::VectorXd d_zin =
      nn::mlp_backward(P, def.f_dense, tape.f_dense, d_z_next, grad);
  const Eigen::Index m = fwd.z_prev.size();
  const Eigen::VectorXd d_ctx = d_zin.tail(d_zin.size() - m);
  nn::lstm_backward(P, def.f_lstm, tape.lstm, d_ctx, grad);

  // reconstruction branch: h(z_prev); shared h slices accumulate again
  const Eigen::VectorXd d_z_prev_h =
      nn::mlp_backward(P, def.h, tape.h_rec, d_x_rec, grad);

  // encoder
  const Eigen::VectorXd d_z_prev =
      d_zin.head(m) + d_z_prev_h + scale * og.d_z_prev_direct;
  nn::mlp_backward(P, def.g, tape.g, d_z_prev, grad);
}

double batch_loss_and_grad(const nn::ParamStore& P, const NetworkDef& def,
                           const NetConfig& cfg,
                           const std::vector<data::TrainingItem>& items,
                           const std::vector<std::size_t>& indices,
                           Eigen::VectorXd& grad) {
  if (indices.empty()) throw ValidationError("loss: empty batch");
  const double scale = 1.0 / static_cast<double>(indices.size());
  double sum = 0.0;
  ModelTape tape;
  for (std::size_t idx : indices) {
    const data::TrainingItem& item = items[idx];
    const ForwardOut fwd = model_forward(P, def, item, &tape);
    sum += item_loss(cfg, fwd, item);
    model_backward(P, def, tape, fwd, loss_output_grads(cfg, fwd, item), scale,
                   grad);
  }
  return sum * scale;
}

}  // namespace nsibf::sysid
