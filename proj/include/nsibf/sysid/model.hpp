#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "nsibf/data/normalizer.hpp"
#include "nsibf/data/windows.hpp"
#include "nsibf/sysid/network.hpp"

namespace nsibf::sysid {

// The identified state-space model: trained g/f/h parameters, the fitted
// normalizer, and the empirical noise covariances Q (state transition) and
// R (measurement reconstruction). Immutable after training; safe for
// concurrent read-only use.
class NsibfModel {
 public:
  struct Meta {
    std::size_t best_epoch = 0;
    double train_loss = 0.0;
    double val_loss = 0.0;
    double residual_mean_f_norm = 0.0;  // |mean e_f|, model-quality diagnostic
    double residual_mean_h_norm = 0.0;
    std::string trained_with = std::string(kToolVersion);
  };

  NsibfModel() = default;
  NsibfModel(NetConfig cfg, nn::ParamStore params, data::Normalizer norm,
             Eigen::MatrixXd Q, Eigen::MatrixXd R, Meta meta);

  const NetConfig& config() const { return config_; }
  const nn::ParamStore& params() const { return params_; }
  const NetworkDef& net() const { return net_; }
  const data::Normalizer& normalizer() const { return normalizer_; }
  const Eigen::MatrixXd& Q() const { return Q_; }
  const Eigen::MatrixXd& R() const { return R_; }
  const Meta& meta() const { return meta_; }

  // g: normalized stacked sensor vector (length s*Mx) -> state (length m).
  Eigen::VectorXd encode(const Eigen::VectorXd& x) const;

  // h: state -> normalized stacked sensor vector.
  Eigen::VectorXd decode(const Eigen::VectorXd& z) const;

  // f on a batch of states (rows) sharing one window; the LSTM context is
  // computed once and reused for every row.
  Eigen::MatrixXd transition(const Eigen::MatrixXd& z_batch,
                             const std::vector<Eigen::VectorXd>& window) const;
  Eigen::VectorXd transition(const Eigen::VectorXd& z,
                             const std::vector<Eigen::VectorXd>& window) const;

  // FNV-1a over parameters, Q and R; identifies the trained model in traces.
  std::string fingerprint() const;

  void save(const std::string& path) const;
  static NsibfModel load(const std::string& path);

 private:
  NetConfig config_;
  nn::ParamStore params_;
  NetworkDef net_;
  data::Normalizer normalizer_;
  Eigen::MatrixXd Q_, R_;
  Meta meta_;
};

}  // namespace nsibf::sysid
