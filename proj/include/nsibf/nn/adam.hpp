#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "nsibf/nn/param_store.hpp"

namespace nsibf::nn {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  Eigen::VectorXd m;  // first moment
  Eigen::VectorXd v;  // second moment
  std::int64_t step = 0;
  AdamConfig cfg;

  static AdamState init(const ParamStore& P, AdamConfig cfg = {}) {
    AdamState s;
    s.m = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(P.size()));
    s.v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(P.size()));
    s.cfg = cfg;
    return s;
  }
};

// One bias-corrected Adam step. Throws NumericError naming the slice of the
// first non-finite gradient component.
void adam_update(ParamStore& P, const Eigen::VectorXd& grad, AdamState& state);

// Scales grad in place so its 2-norm is at most max_norm; returns the
// pre-clip norm.
double clip_global_norm(Eigen::VectorXd& grad, double max_norm);

}  // namespace nsibf::nn
