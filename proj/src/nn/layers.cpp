#include "nsibf/nn/layers.hpp"

#include <cmath>

namespace nsibf::nn {

namespace {

Eigen::VectorXd apply_act(Activation a, const Eigen::VectorXd& pre) {
  switch (a) {
    case Activation::linear:
      return pre;
    case Activation::relu:
      return pre.cwiseMax(0.0);
    case Activation::tanh:
      return pre.array().tanh().matrix();
    case Activation::sigmoid:
      return (1.0 / (1.0 + (-pre.array()).exp())).matrix();
  }
  return pre;
}

// d(act)/d(pre), expressed from pre and out.
Eigen::VectorXd act_grad(Activation a, const Eigen::VectorXd& pre,
                         const Eigen::VectorXd& out) {
  switch (a) {
    case Activation::linear:
      return Eigen::VectorXd::Ones(pre.size());
    case Activation::relu:
      return (pre.array() > 0.0).cast<double>().matrix();
    case Activation::tanh:
      return (1.0 - out.array().square()).matrix();
    case Activation::sigmoid:
      return (out.array() * (1.0 - out.array())).matrix();
  }
  return Eigen::VectorXd::Ones(pre.size());
}

inline Eigen::ArrayXd sigmoid(const Eigen::ArrayXd& x) {
  return 1.0 / (1.0 + (-x).exp());
}

}  // namespace

Activation activation_from_string(const std::string& s) {
  if (s == "linear") return Activation::linear;
  if (s == "relu") return Activation::relu;
  if (s == "tanh") return Activation::tanh;
  if (s == "sigmoid") return Activation::sigmoid;
  throw ValidationError("unknown activation: " + s);
}

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::linear: return "linear";
    case Activation::relu: return "relu";
    case Activation::tanh: return "tanh";
    case Activation::sigmoid: return "sigmoid";
  }
  return "linear";
}

void check_tape_version(const ParamStore& P, std::uint64_t tape_version,
                        const char* what) {
  if (P.version() != tape_version) {
    throw ValidationError(std::string(what) +
                          ": tape is stale (parameters changed since forward pass)");
  }
}

// ---- dense -----------------------------------------------------------------

DenseLayer make_dense(ParamStore& P, const std::string& name, std::size_t in,
                      std::size_t out, Activation act) {
  DenseLayer L;
  L.name = name;
  L.in = in;
  L.out = out;
  L.act = act;
  L.W = P.add_slice(name + ".W", out, in);
  L.b = P.add_slice(name + ".b", out, 1);
  return L;
}

Eigen::VectorXd dense_forward(const ParamStore& P, const DenseLayer& L,
                              const Eigen::VectorXd& x, DenseTape* tape) {
  if (static_cast<std::size_t>(x.size()) != L.in) {
    throw ValidationError("layer " + L.name + ": input length " +
                          std::to_string(x.size()) + " != expected " +
                          std::to_string(L.in));
  }
  Eigen::VectorXd pre = P.matrix(L.W) * x + P.vector(L.b);
  Eigen::VectorXd out = apply_act(L.act, pre);
  if (tape) {
    tape->input = x;
    tape->pre = std::move(pre);
    tape->out = out;
  }
  return out;
}

Eigen::VectorXd dense_backward(const ParamStore& P, const DenseLayer& L,
                               const DenseTape& tape, const Eigen::VectorXd& d_out,
                               Eigen::VectorXd& grad) {
  if (static_cast<std::size_t>(d_out.size()) != L.out) {
    throw ValidationError("layer " + L.name + ": output gradient length mismatch");
  }
  const Eigen::VectorXd d_pre =
      d_out.cwiseProduct(act_grad(L.act, tape.pre, tape.out));
  P.slice_matrix(grad, L.W).noalias() += d_pre * tape.input.transpose();
  P.slice_matrix(grad, L.b).col(0) += d_pre;
  return P.matrix(L.W).transpose() * d_pre;
}

// ---- mlp -------------------------------------------------------------------

Mlp make_mlp(ParamStore& P, const std::string& name, std::size_t in,
             const std::vector<std::size_t>& hidden, std::size_t out,
             Activation hidden_act) {
  Mlp net;
  std::size_t prev = in;
  std::size_t idx = 0;
  for (std::size_t width : hidden) {
    net.layers.push_back(make_dense(P, name + ".dense" + std::to_string(idx++),
                                    prev, width, hidden_act));
    prev = width;
  }
  net.layers.push_back(
      make_dense(P, name + ".dense" + std::to_string(idx), prev, out,
                 Activation::linear));
  return net;
}

Eigen::VectorXd mlp_forward(const ParamStore& P, const Mlp& net,
                            const Eigen::VectorXd& x, MlpTape* tape) {
  Eigen::VectorXd cur = x;
  if (tape) {
    tape->segs.resize(net.layers.size());
    tape->param_version = P.version();
  }
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    cur = dense_forward(P, net.layers[i], cur, tape ? &tape->segs[i] : nullptr);
  }
  return cur;
}

Eigen::VectorXd mlp_backward(const ParamStore& P, const Mlp& net, const MlpTape& tape,
                             const Eigen::VectorXd& d_out, Eigen::VectorXd& grad) {
  check_tape_version(P, tape.param_version, "mlp_backward");
  Eigen::VectorXd d = d_out;
  for (std::size_t i = net.layers.size(); i-- > 0;) {
    d = dense_backward(P, net.layers[i], tape.segs[i], d, grad);
  }
  return d;
}

// ---- lstm ------------------------------------------------------------------

LstmStack make_lstm(ParamStore& P, const std::string& name, std::size_t in,
                    std::size_t hidden, std::size_t layers) {
  LstmStack net;
  std::size_t prev = in;
  for (std::size_t k = 0; k < layers; ++k) {
    LstmLayer L;
    L.name = name + ".lstm" + std::to_string(k);
    L.in = prev;
    L.hidden = hidden;
    L.Wx = P.add_slice(L.name + ".Wx", 4 * hidden, prev);
    L.Wh = P.add_slice(L.name + ".Wh", 4 * hidden, hidden);
    L.b = P.add_slice(L.name + ".b", 4 * hidden, 1);
    net.layers.push_back(L);
    prev = hidden;
  }
  return net;
}

Eigen::VectorXd lstm_forward(const ParamStore& P, const LstmStack& net,
                             const std::vector<Eigen::VectorXd>& seq,
                             LstmTape* tape) {
  if (seq.empty()) throw ValidationError("lstm_forward: empty window");
  const std::size_t T = seq.size();
  if (tape) {
    tape->steps.assign(net.layers.size(), std::vector<LstmStepTape>(T));
    tape->param_version = P.version();
  }

  std::vector<Eigen::VectorXd> inputs = seq;
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    const LstmLayer& L = net.layers[k];
    const auto Wx = P.matrix(L.Wx);
    const auto Wh = P.matrix(L.Wh);
    const auto b = P.vector(L.b);
    const Eigen::Index H = static_cast<Eigen::Index>(L.hidden);

    Eigen::VectorXd h = Eigen::VectorXd::Zero(H);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(H);
    std::vector<Eigen::VectorXd> outputs(T);

    for (std::size_t t = 0; t < T; ++t) {
      const Eigen::VectorXd& x = inputs[t];
      if (x.size() != static_cast<Eigen::Index>(L.in)) {
        throw ValidationError("layer " + L.name + ": window element length " +
                              std::to_string(x.size()) + " != expected " +
                              std::to_string(L.in));
      }
      Eigen::VectorXd a = Wx * x + Wh * h + b;
      Eigen::ArrayXd gi = sigmoid(a.segment(0, H).array());
      Eigen::ArrayXd gf = sigmoid(a.segment(H, H).array());
      Eigen::ArrayXd gg = a.segment(2 * H, H).array().tanh();
      Eigen::ArrayXd go = sigmoid(a.segment(3 * H, H).array());

      Eigen::VectorXd c_new = (gf * c.array() + gi * gg).matrix();
      Eigen::VectorXd tanh_c = c_new.array().tanh().matrix();
      Eigen::VectorXd h_new = (go * tanh_c.array()).matrix();

      if (tape) {
        LstmStepTape& st = tape->steps[k][t];
        st.x = x;
        st.h_prev = h;
        st.c_prev = c;
        st.i = gi.matrix();
        st.f = gf.matrix();
        st.g = gg.matrix();
        st.o = go.matrix();
        st.c = c_new;
        st.tanh_c = tanh_c;
      }
      h = std::move(h_new);
      c = std::move(c_new);
      outputs[t] = h;
    }
    inputs = std::move(outputs);
  }
  return inputs.back();
}

void lstm_backward(const ParamStore& P, const LstmStack& net, const LstmTape& tape,
                   const Eigen::VectorXd& d_h_last, Eigen::VectorXd& grad) {
  check_tape_version(P, tape.param_version, "lstm_backward");
  if (tape.steps.empty() || tape.steps[0].empty()) {
    throw ValidationError("lstm_backward: empty tape");
  }
  const std::size_t T = tape.steps[0].size();

  // d_h_seq[t]: gradient flowing into the current layer's output at step t.
  std::vector<Eigen::VectorXd> d_h_seq(T);
  for (std::size_t t = 0; t < T; ++t) {
    d_h_seq[t] = Eigen::VectorXd::Zero(
        static_cast<Eigen::Index>(net.layers.back().hidden));
  }
  d_h_seq[T - 1] = d_h_last;

  for (std::size_t k = net.layers.size(); k-- > 0;) {
    const LstmLayer& L = net.layers[k];
    const Eigen::Index H = static_cast<Eigen::Index>(L.hidden);
    const auto Wx = P.matrix(L.Wx);
    const auto Wh = P.matrix(L.Wh);
    auto gWx = P.slice_matrix(grad, L.Wx);
    auto gWh = P.slice_matrix(grad, L.Wh);
    auto gb = P.slice_matrix(grad, L.b);

    std::vector<Eigen::VectorXd> d_x_seq(T);
    Eigen::VectorXd d_h = Eigen::VectorXd::Zero(H);  // recurrent carry
    Eigen::VectorXd d_c = Eigen::VectorXd::Zero(H);

    for (std::size_t t = T; t-- > 0;) {
      const LstmStepTape& st = tape.steps[k][t];
      d_h += d_h_seq[t];

      const Eigen::ArrayXd d_o =
          d_h.array() * st.tanh_c.array();
      d_c.array() += d_h.array() * st.o.array() *
                     (1.0 - st.tanh_c.array().square());

      const Eigen::ArrayXd d_f = d_c.array() * st.c_prev.array();
      const Eigen::ArrayXd d_i = d_c.array() * st.g.array();
      const Eigen::ArrayXd d_g = d_c.array() * st.i.array();

      Eigen::VectorXd d_a(4 * H);
      d_a.segment(0, H) =
          (d_i * st.i.array() * (1.0 - st.i.array())).matrix();
      d_a.segment(H, H) =
          (d_f * st.f.array() * (1.0 - st.f.array())).matrix();
      d_a.segment(2 * H, H) = (d_g * (1.0 - st.g.array().square())).matrix();
      d_a.segment(3 * H, H) =
          (d_o * st.o.array() * (1.0 - st.o.array())).matrix();

      gWx.noalias() += d_a * st.x.transpose();
      gWh.noalias() += d_a * st.h_prev.transpose();
      gb.col(0) += d_a;

      d_x_seq[t] = Wx.transpose() * d_a;
      d_h = Wh.transpose() * d_a;
      d_c = (d_c.array() * st.f.array()).matrix();
    }

    // Input gradients feed the layer below as per-step output gradients.
    if (k > 0) d_h_seq = std::move(d_x_seq);
  }
}

// ---- init ------------------------------------------------------------------

namespace {
void init_slice_uniform(ParamStore& P, std::size_t id, double bound, Rng& rng) {
  auto m = P.mutable_matrix(id);
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      m(r, c) = rng.uniform(-bound, bound);
}
}  // namespace

void init_dense(ParamStore& P, const DenseLayer& L, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(L.in));
  init_slice_uniform(P, L.W, bound, rng);
  P.mutable_matrix(L.b).setZero();
}

void init_mlp(ParamStore& P, const Mlp& net, Rng& rng) {
  for (const auto& L : net.layers) init_dense(P, L, rng);
}

void init_lstm(ParamStore& P, const LstmStack& net, Rng& rng) {
  for (const auto& L : net.layers) {
    init_slice_uniform(P, L.Wx, 1.0 / std::sqrt(static_cast<double>(L.in)), rng);
    init_slice_uniform(P, L.Wh, 1.0 / std::sqrt(static_cast<double>(L.hidden)), rng);
    P.mutable_matrix(L.b).setZero();
  }
}

}  // namespace nsibf::nn
