#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "nsibf/common.hpp"

namespace nsibf::nn {

struct SliceInfo {
  std::string name;
  std::size_t offset = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;  // 1 for bias vectors

  std::size_t count() const { return rows * cols; }
};

// Flat parameter vector with a directory of named, contiguous slices.
// Slices are append-only, so they are disjoint and jointly cover the vector
// by construction. Every mutation bumps the version counter; tapes record
// the version they were taken at so stale backprop is rejected.
class ParamStore {
 public:
  std::size_t add_slice(std::string name, std::size_t rows, std::size_t cols) {
    SliceInfo s;
    s.name = std::move(name);
    s.offset = static_cast<std::size_t>(values_.size());
    s.rows = rows;
    s.cols = cols;
    slices_.push_back(s);
    values_.conservativeResize(values_.size() + static_cast<Eigen::Index>(rows * cols));
    values_.tail(static_cast<Eigen::Index>(rows * cols)).setZero();
    ++version_;
    return slices_.size() - 1;
  }

  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  std::uint64_t version() const { return version_; }
  const std::vector<SliceInfo>& slices() const { return slices_; }

  const SliceInfo& slice(std::size_t id) const { return slices_.at(id); }

  const Eigen::VectorXd& values() const { return values_; }

  Eigen::VectorXd& mutable_values() {
    ++version_;
    return values_;
  }

  void set_values(const Eigen::VectorXd& v) {
    if (v.size() != values_.size())
      throw ValidationError("parameter vector size mismatch");
    values_ = v;
    ++version_;
  }

  // Matrix view of a slice (column-major within the flat storage).
  Eigen::Map<const Eigen::MatrixXd> matrix(std::size_t id) const {
    const SliceInfo& s = slices_.at(id);
    return {values_.data() + s.offset, static_cast<Eigen::Index>(s.rows),
            static_cast<Eigen::Index>(s.cols)};
  }

  Eigen::Map<const Eigen::VectorXd> vector(std::size_t id) const {
    const SliceInfo& s = slices_.at(id);
    return {values_.data() + s.offset, static_cast<Eigen::Index>(s.count())};
  }

  Eigen::Map<Eigen::MatrixXd> mutable_matrix(std::size_t id) {
    ++version_;
    const SliceInfo& s = slices_.at(id);
    return {values_.data() + s.offset, static_cast<Eigen::Index>(s.rows),
            static_cast<Eigen::Index>(s.cols)};
  }

  // Views of an external buffer (e.g. a gradient) laid out like this store.
  Eigen::Map<Eigen::MatrixXd> slice_matrix(Eigen::VectorXd& buf, std::size_t id) const {
    const SliceInfo& s = slices_.at(id);
    return {buf.data() + s.offset, static_cast<Eigen::Index>(s.rows),
            static_cast<Eigen::Index>(s.cols)};
  }

  Eigen::Map<const Eigen::VectorXd> slice_vector(const Eigen::VectorXd& buf,
                                                 std::size_t id) const {
    const SliceInfo& s = slices_.at(id);
    return {buf.data() + s.offset, static_cast<Eigen::Index>(s.count())};
  }

  // Name of the slice containing flat index i, with the in-slice offset.
  std::string locate(std::size_t i) const {
    for (const SliceInfo& s : slices_) {
      if (i >= s.offset && i < s.offset + s.count())
        return s.name + "[" + std::to_string(i - s.offset) + "]";
    }
    return "param[" + std::to_string(i) + "]";
  }

  Eigen::VectorXd zeros_like() const {
    return Eigen::VectorXd::Zero(values_.size());
  }

 private:
  Eigen::VectorXd values_;
  std::vector<SliceInfo> slices_;
  std::uint64_t version_ = 0;
};

}  // namespace nsibf::nn
