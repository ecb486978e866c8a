#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>

#include "nsibf/nn/param_store.hpp"

namespace nsibf::nn {

struct GradCheckReport {
  double max_rel_err = 0.0;
  std::size_t worst_index = 0;
  std::string worst_slice;
  double analytic_at_worst = 0.0;
  double numeric_at_worst = 0.0;
  std::size_t coords_checked = 0;

  bool passes(double tol) const { return max_rel_err < tol; }
};

// Compares `analytic_grad` against central finite differences of `loss_fn`
// (which must evaluate the loss at the store's current values). Parameters
// are perturbed in place and restored. `max_coords` > 0 checks a seeded
// random subsample instead of every coordinate.
//
// Relative error per coordinate: |fd - an| / max(|fd|, |an|, denom_floor),
// so noise-dominated near-zero components do not produce false alarms.
GradCheckReport finite_diff_check(ParamStore& P,
                                  const std::function<double()>& loss_fn,
                                  const Eigen::VectorXd& analytic_grad,
                                  double step = 1e-5,
                                  std::size_t max_coords = 0,
                                  std::uint64_t seed = 0,
                                  double denom_floor = 1e-4);

}  // namespace nsibf::nn
