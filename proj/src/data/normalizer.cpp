#include "nsibf/data/normalizer.hpp"

namespace nsibf::data {

namespace {

void transform_matrix(Eigen::MatrixXd& M, const Eigen::VectorXd& lo,
                      const Eigen::VectorXd& hi) {
  for (Eigen::Index c = 0; c < M.cols(); ++c) {
    const double span = hi[c] - lo[c];
    if (span > 0.0) {
      M.col(c) = (M.col(c).array() - lo[c]) / span;
    } else {
      M.col(c).setZero();
    }
  }
}

void inverse_matrix(Eigen::MatrixXd& M, const Eigen::VectorXd& lo,
                    const Eigen::VectorXd& hi) {
  for (Eigen::Index c = 0; c < M.cols(); ++c) {
    const double span = hi[c] - lo[c];
    M.col(c) = (M.col(c).array() * span) + lo[c];
  }
}

}  // namespace

Normalizer Normalizer::fit(const SeriesFrame& frame) {
  if (frame.rows() == 0) throw ValidationError("normalizer: empty frame");
  Normalizer n;
  n.x_min = frame.X.colwise().minCoeff();
  n.x_max = frame.X.colwise().maxCoeff();
  n.u_min = frame.U.cols() > 0 ? frame.U.colwise().minCoeff().eval()
                               : Eigen::VectorXd(0);
  n.u_max = frame.U.cols() > 0 ? frame.U.colwise().maxCoeff().eval()
                               : Eigen::VectorXd(0);
  return n;
}

SeriesFrame Normalizer::transform(const SeriesFrame& frame) const {
  SeriesFrame out = frame;
  transform_matrix(out.X, x_min, x_max);
  if (out.U.cols() > 0) transform_matrix(out.U, u_min, u_max);
  return out;
}

SeriesFrame Normalizer::inverse(const SeriesFrame& frame) const {
  SeriesFrame out = frame;
  inverse_matrix(out.X, x_min, x_max);
  if (out.U.cols() > 0) inverse_matrix(out.U, u_min, u_max);
  return out;
}

Eigen::VectorXd Normalizer::transform_sensor_row(const Eigen::VectorXd& row) const {
  Eigen::VectorXd out(row.size());
  for (Eigen::Index c = 0; c < row.size(); ++c) {
    const double span = x_max[c] - x_min[c];
    out[c] = span > 0.0 ? (row[c] - x_min[c]) / span : 0.0;
  }
  return out;
}

Eigen::VectorXd Normalizer::inverse_sensor_row(const Eigen::VectorXd& row) const {
  Eigen::VectorXd out(row.size());
  for (Eigen::Index c = 0; c < row.size(); ++c) {
    out[c] = x_min[c] + row[c] * (x_max[c] - x_min[c]);
  }
  return out;
}

}  // namespace nsibf::data
