#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "nsibf/nn/param_store.hpp"
#include "nsibf/rng.hpp"

namespace nsibf::nn {

enum class Activation { linear, relu, tanh, sigmoid };

Activation activation_from_string(const std::string& s);
std::string activation_name(Activation a);

// ---- dense -----------------------------------------------------------------

struct DenseLayer {
  std::size_t W = 0;  // slice id, out x in
  std::size_t b = 0;  // slice id, out
  std::size_t in = 0;
  std::size_t out = 0;
  Activation act = Activation::linear;
  std::string name;
};

struct DenseTape {
  Eigen::VectorXd input;
  Eigen::VectorXd pre;   // W x + b
  Eigen::VectorXd out;   // act(pre)
};

DenseLayer make_dense(ParamStore& P, const std::string& name, std::size_t in,
                      std::size_t out, Activation act);

// y = act(W x + b). Tape segment optional (inference passes skip it).
Eigen::VectorXd dense_forward(const ParamStore& P, const DenseLayer& L,
                              const Eigen::VectorXd& x, DenseTape* tape = nullptr);

// Accumulates dL/dW, dL/db into grad (ParamStore layout); returns dL/dx.
Eigen::VectorXd dense_backward(const ParamStore& P, const DenseLayer& L,
                               const DenseTape& tape, const Eigen::VectorXd& d_out,
                               Eigen::VectorXd& grad);

// ---- multi-layer perceptron --------------------------------------------------

struct Mlp {
  std::vector<DenseLayer> layers;
  std::size_t in_dim() const { return layers.empty() ? 0 : layers.front().in; }
  std::size_t out_dim() const { return layers.empty() ? 0 : layers.back().out; }
};

struct MlpTape {
  std::vector<DenseTape> segs;
  std::uint64_t param_version = 0;
};

// Hidden layers use `hidden_act`; the output layer is linear.
Mlp make_mlp(ParamStore& P, const std::string& name, std::size_t in,
             const std::vector<std::size_t>& hidden, std::size_t out,
             Activation hidden_act = Activation::relu);

Eigen::VectorXd mlp_forward(const ParamStore& P, const Mlp& net,
                            const Eigen::VectorXd& x, MlpTape* tape = nullptr);

Eigen::VectorXd mlp_backward(const ParamStore& P, const Mlp& net, const MlpTape& tape,
                             const Eigen::VectorXd& d_out, Eigen::VectorXd& grad);

// ---- LSTM --------------------------------------------------------------------

// Gate packing in the 4H rows of Wx/Wh/b: [input, forget, candidate, output].
struct LstmLayer {
  std::size_t Wx = 0;  // 4H x in
  std::size_t Wh = 0;  // 4H x H
  std::size_t b = 0;   // 4H
  std::size_t in = 0;
  std::size_t hidden = 0;
  std::string name;
};

struct LstmStack {
  std::vector<LstmLayer> layers;
  std::size_t in_dim() const { return layers.empty() ? 0 : layers.front().in; }
  std::size_t hidden_dim() const { return layers.empty() ? 0 : layers.back().hidden; }
};

struct LstmStepTape {
  Eigen::VectorXd x, h_prev, c_prev;
  Eigen::VectorXd i, f, g, o;  // post-activation gates
  Eigen::VectorXd c, tanh_c;
};

struct LstmTape {
  // steps[layer][t]
  std::vector<std::vector<LstmStepTape>> steps;
  std::uint64_t param_version = 0;
};

LstmStack make_lstm(ParamStore& P, const std::string& name, std::size_t in,
                    std::size_t hidden, std::size_t layers);

// Runs the stack over the sequence from zero initial state; returns the last
// hidden vector of the top layer. Throws on an empty sequence.
Eigen::VectorXd lstm_forward(const ParamStore& P, const LstmStack& net,
                             const std::vector<Eigen::VectorXd>& seq,
                             LstmTape* tape = nullptr);

// BPTT from a gradient on the final top-layer hidden state.
void lstm_backward(const ParamStore& P, const LstmStack& net, const LstmTape& tape,
                   const Eigen::VectorXd& d_h_last, Eigen::VectorXd& grad);

// ---- init --------------------------------------------------------------------

// Uniform fan-in scaled init: W ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)), b = 0.
void init_dense(ParamStore& P, const DenseLayer& L, Rng& rng);
void init_mlp(ParamStore& P, const Mlp& net, Rng& rng);
void init_lstm(ParamStore& P, const LstmStack& net, Rng& rng);

void check_tape_version(const ParamStore& P, std::uint64_t tape_version,
                        const char* what);

}  // namespace nsibf::nn
