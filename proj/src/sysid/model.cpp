#include "nsibf/sysid/model.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

namespace nsibf::sysid {

static_assert(std::endian::native == std::endian::little,
              "bundle format assumes a little-endian host");

namespace {
constexpr char kMagic[8] = {'N', 'S', 'I', 'B', 'F', 'M', 'D', 'L'};
constexpr int kFormatVersion = 1;

nlohmann::ordered_json vec_to_json(const Eigen::VectorXd& v) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vec_from_json(const nlohmann::json& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a[i];
  return v;
}
}  // namespace

NsibfModel::NsibfModel(NetConfig cfg, nn::ParamStore params, data::Normalizer norm,
                       Eigen::MatrixXd Q, Eigen::MatrixXd R, Meta meta)
    : config_(std::move(cfg)),
      normalizer_(std::move(norm)),
      Q_(std::move(Q)),
      R_(std::move(R)),
      meta_(std::move(meta)) {
  // Rebuild the canonical slice layout for this architecture and adopt the
  // provided values, so slice ids in net_ always match params_.
  nn::ParamStore canonical;
  net_ = NetworkDef::build(config_, canonical);
  if (canonical.size() != params.size())
    throw ValidationError("model: parameter vector does not match architecture");
  canonical.set_values(params.values());
  params_ = std::move(canonical);
}

Eigen::VectorXd NsibfModel::encode(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != config_.obs_dim()) {
    throw ValidationError("encode: input length " + std::to_string(x.size()) +
                          " != stacked sensor dim " +
                          std::to_string(config_.obs_dim()));
  }
  return nn::mlp_forward(params_, net_.g, x);
}

Eigen::VectorXd NsibfModel::decode(const Eigen::VectorXd& z) const {
  if (static_cast<std::size_t>(z.size()) != config_.state_dim) {
    throw ValidationError("decode: input length " + std::to_string(z.size()) +
                          " != state dim " + std::to_string(config_.state_dim));
  }
  return nn::mlp_forward(params_, net_.h, z);
}

Eigen::MatrixXd NsibfModel::transition(
    const Eigen::MatrixXd& z_batch,
    const std::vector<Eigen::VectorXd>& window) const {
  if (window.size() != config_.window_super) {
    throw ValidationError("transition: window has " +
                          std::to_string(window.size()) + " super-steps, need " +
                          std::to_string(config_.window_super));
  }
  if (static_cast<std::size_t>(z_batch.cols()) != config_.state_dim) {
    throw ValidationError("transition: state dim mismatch");
  }
  const Eigen::VectorXd ctx = nn::lstm_forward(params_, net_.f_lstm, window);
  Eigen::MatrixXd out(z_batch.rows(), z_batch.cols());
  Eigen::VectorXd zin(static_cast<Eigen::Index>(config_.state_dim) + ctx.size());
  for (Eigen::Index r = 0; r < z_batch.rows(); ++r) {
    zin << z_batch.row(r).transpose(), ctx;
    out.row(r) = nn::mlp_forward(params_, net_.f_dense, zin).transpose();
  }
  return out;
}

Eigen::VectorXd NsibfModel::transition(
    const Eigen::VectorXd& z, const std::vector<Eigen::VectorXd>& window) const {
  return transition(Eigen::MatrixXd(z.transpose()), window).row(0).transpose();
}

std::string NsibfModel::fingerprint() const {
  std::uint64_t h = fnv1a64(params_.values().data(),
                            params_.size() * sizeof(double));
  h = fnv1a64(Q_.data(), static_cast<std::size_t>(Q_.size()) * sizeof(double), h);
  h = fnv1a64(R_.data(), static_cast<std::size_t>(R_.size()) * sizeof(double), h);
  return to_hex(h);
}

void NsibfModel::save(const std::string& path) const {
  nlohmann::ordered_json header;
  header["format_version"] = kFormatVersion;
  header["tool_version"] = std::string(kToolVersion);
  header["config"] = config_.to_json();
  header["normalizer"] = {{"x_min", vec_to_json(normalizer_.x_min)},
                          {"x_max", vec_to_json(normalizer_.x_max)},
                          {"u_min", vec_to_json(normalizer_.u_min)},
                          {"u_max", vec_to_json(normalizer_.u_max)}};
  nlohmann::ordered_json slices = nlohmann::ordered_json::array();
  for (const auto& s : params_.slices()) {
    slices.push_back({{"name", s.name},
                      {"offset", s.offset},
                      {"rows", s.rows},
                      {"cols", s.cols}});
  }
  header["slices"] = slices;
  header["param_count"] = params_.size();
  header["q_dim"] = static_cast<std::size_t>(Q_.rows());
  header["r_dim"] = static_cast<std::size_t>(R_.rows());
  header["training"] = {{"best_epoch", meta_.best_epoch},
                        {"train_loss", meta_.train_loss},
                        {"val_loss", meta_.val_loss},
                        {"residual_mean_f_norm", meta_.residual_mean_f_norm},
                        {"residual_mean_h_norm", meta_.residual_mean_h_norm},
                        {"trained_with", meta_.trained_with}};

  const std::string hj = header.dump();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write model bundle: " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint64_t hlen = hj.size();
  out.write(reinterpret_cast<const char*>(&hlen), sizeof(hlen));
  out.write(hj.data(), static_cast<std::streamsize>(hj.size()));
  auto write_doubles = [&](const double* p, std::size_t n) {
    out.write(reinterpret_cast<const char*>(p),
              static_cast<std::streamsize>(n * sizeof(double)));
  };
  write_doubles(params_.values().data(), params_.size());
  write_doubles(Q_.data(), static_cast<std::size_t>(Q_.size()));
  write_doubles(R_.data(), static_cast<std::size_t>(R_.size()));
  if (!out) throw ValidationError("write failed: " + path);
}

NsibfModel NsibfModel::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open model bundle: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw ValidationError(path + ": not a model bundle");
  std::uint64_t hlen = 0;
  in.read(reinterpret_cast<char*>(&hlen), sizeof(hlen));
  std::string hj(hlen, '\0');
  in.read(hj.data(), static_cast<std::streamsize>(hlen));
  if (!in) throw ValidationError(path + ": truncated header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(hj);
  } catch (const std::exception& e) {
    throw ValidationError(path + ": bad header: " + e.what());
  }
  if (header.at("format_version").get<int>() != kFormatVersion)
    throw ValidationError(path + ": unsupported format version");

  NetConfig cfg = NetConfig::from_json(header.at("config"));
  nn::ParamStore params;
  NetworkDef::build(cfg, params);
  if (params.size() != header.at("param_count").get<std::size_t>())
    throw ValidationError(path + ": parameter count does not match architecture");

  data::Normalizer norm;
  const auto& nj = header.at("normalizer");
  norm.x_min = vec_from_json(nj.at("x_min"));
  norm.x_max = vec_from_json(nj.at("x_max"));
  norm.u_min = vec_from_json(nj.at("u_min"));
  norm.u_max = vec_from_json(nj.at("u_max"));

  const auto qd = static_cast<Eigen::Index>(header.at("q_dim").get<std::size_t>());
  const auto rd = static_cast<Eigen::Index>(header.at("r_dim").get<std::size_t>());

  auto read_doubles = [&](double* p, std::size_t n) {
    in.read(reinterpret_cast<char*>(p),
            static_cast<std::streamsize>(n * sizeof(double)));
  };
  read_doubles(params.mutable_values().data(), params.size());
  Eigen::MatrixXd Q(qd, qd), R(rd, rd);
  read_doubles(Q.data(), static_cast<std::size_t>(Q.size()));
  read_doubles(R.data(), static_cast<std::size_t>(R.size()));
  if (!in) throw ValidationError(path + ": truncated payload");

  Meta meta;
  const auto& tj = header.at("training");
  meta.best_epoch = tj.at("best_epoch").get<std::size_t>();
  meta.train_loss = tj.at("train_loss").get<double>();
  meta.val_loss = tj.at("val_loss").get<double>();
  meta.residual_mean_f_norm = tj.at("residual_mean_f_norm").get<double>();
  meta.residual_mean_h_norm = tj.at("residual_mean_h_norm").get<double>();
  meta.trained_with = tj.at("trained_with").get<std::string>();

  return NsibfModel(std::move(cfg), std::move(params), std::move(norm),
                    std::move(Q), std::move(R), std::move(meta));
}

}  // namespace nsibf::sysid
