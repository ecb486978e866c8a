#pragma once

#include <Eigen/Core>

#include "nsibf/data/windows.hpp"
#include "nsibf/nn/layers.hpp"
#include "nsibf/sysid/config.hpp"

namespace nsibf::sysid {

// The three subnets over one shared ParamStore:
//   g: stacked sensors -> hidden state          (encoder)
//   h: hidden state -> stacked sensors          (decoder, used twice)
//   f: LSTM over the window gives a context vector; a dense stage maps
//      [z; context] -> next hidden state        (transition)
struct NetworkDef {
  nn::Mlp g;
  nn::Mlp h;
  nn::Mlp f_dense;
  nn::LstmStack f_lstm;

  static NetworkDef build(const NetConfig& cfg, nn::ParamStore& P);
};

void init_params(const NetworkDef& def, nn::ParamStore& P, std::uint64_t seed);

struct ForwardOut {
  Eigen::VectorXd z_prev;   // g(x^{t-1})
  Eigen::VectorXd x_rec;    // h(z_prev)
  Eigen::VectorXd z_next;   // f(z_prev, window)
  Eigen::VectorXd x_pred;   // h(z_next)
};

// Full forward record for one item; sufficient for exact reverse-mode.
struct ModelTape {
  nn::MlpTape g;
  nn::MlpTape h_rec;
  nn::LstmTape lstm;
  nn::MlpTape f_dense;
  nn::MlpTape h_pred;
};

ForwardOut model_forward(const nn::ParamStore& P, const NetworkDef& def,
                         const data::TrainingItem& item, ModelTape* tape = nullptr);

double item_loss(const NetConfig& cfg, const ForwardOut& f,
                 const data::TrainingItem& item);

double batch_loss(const nn::ParamStore& P, const NetworkDef& def,
                  const NetConfig& cfg, const std::vector<data::TrainingItem>& items);

// Output-side gradients of one item's loss contribution. The defaults are
// the analytic derivatives of item_loss; the direct z terms carry the
// state-smoothness component.
struct OutputGrads {
  Eigen::VectorXd d_x_rec;
  Eigen::VectorXd d_x_pred;
  Eigen::VectorXd d_z_prev_direct;
  Eigen::VectorXd d_z_next_direct;
};

OutputGrads loss_output_grads(const NetConfig& cfg, const ForwardOut& f,
                              const data::TrainingItem& item);

// Reverse pass through the composite; the shared h slices accumulate from
// both the reconstruction and prediction paths. Gradients are scaled by
// `scale` and added into `grad`.
void model_backward(const nn::ParamStore& P, const NetworkDef& def,
                    const ModelTape& tape, const ForwardOut& fwd,
                    const OutputGrads& og, double scale, Eigen::VectorXd& grad);

// Mean item_loss over the batch plus its gradient.
double batch_loss_and_grad(const nn::ParamStore& P, const NetworkDef& def,
                           const NetConfig& cfg,
                           const std::vector<data::TrainingItem>& items,
                           const std::vector<std::size_t>& indices,
                           Eigen::VectorXd& grad);

}  // namespace nsibf::sysid
