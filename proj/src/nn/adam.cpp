#include "nsibf/nn/adam.hpp"

#include <cmath>

#include "nsibf/common.hpp"

namespace nsibf::nn {

void adam_update(ParamStore& P, const Eigen::VectorXd& grad, AdamState& state) {
  if (grad.size() != static_cast<Eigen::Index>(P.size()) ||
      state.m.size() != grad.size()) {
    throw ValidationError("adam_update: gradient/state shape mismatch");
  }
  if (!grad.allFinite()) {
    for (Eigen::Index i = 0; i < grad.size(); ++i) {
      if (!std::isfinite(grad[i])) {
        throw NumericError("adam_update: non-finite gradient at " +
                           P.locate(static_cast<std::size_t>(i)));
      }
    }
  }
  const AdamConfig& c = state.cfg;
  state.step += 1;
  state.m = c.beta1 * state.m + (1.0 - c.beta1) * grad;
  state.v = c.beta2 * state.v.array().matrix() +
            (1.0 - c.beta2) * grad.cwiseProduct(grad);
  const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.step));
  Eigen::ArrayXd m_hat = state.m.array() / bc1;
  Eigen::ArrayXd v_hat = state.v.array() / bc2;
  P.mutable_values().array() -= c.lr * m_hat / (v_hat.sqrt() + c.eps);
}

double clip_global_norm(Eigen::VectorXd& grad, double max_norm) {
  const double n = grad.norm();
  if (max_norm > 0.0 && n > max_norm) grad *= max_norm / n;
  return n;
}

}  // namespace nsibf::nn
