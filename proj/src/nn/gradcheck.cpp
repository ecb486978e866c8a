#include "nsibf/nn/gradcheck.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "nsibf/common.hpp"
#include "nsibf/rng.hpp"

namespace nsibf::nn {

GradCheckReport finite_diff_check(ParamStore& P,
                                  const std::function<double()>& loss_fn,
                                  const Eigen::VectorXd& analytic_grad,
                                  double step, std::size_t max_coords,
                                  std::uint64_t seed, double denom_floor) {
  if (analytic_grad.size() != static_cast<Eigen::Index>(P.size())) {
    throw ValidationError("finite_diff_check: gradient size mismatch");
  }
  const double base = loss_fn();
  if (!std::isfinite(base)) {
    throw NumericError("finite_diff_check: loss is non-finite at current parameters");
  }

  std::vector<std::size_t> coords(P.size());
  std::iota(coords.begin(), coords.end(), std::size_t{0});
  if (max_coords > 0 && max_coords < coords.size()) {
    Rng rng(seed);
    rng.shuffle(coords);
    coords.resize(max_coords);
  }

  GradCheckReport rep;
  for (std::size_t i : coords) {
    const Eigen::Index k = static_cast<Eigen::Index>(i);
    const double saved = P.values()[k];
    P.mutable_values()[k] = saved + step;
    const double up = loss_fn();
    P.mutable_values()[k] = saved - step;
    const double down = loss_fn();
    P.mutable_values()[k] = saved;
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw NumericError("finite_diff_check: loss non-finite near " + P.locate(i));
    }
    const double fd = (up - down) / (2.0 * step);
    const double an = analytic_grad[k];
    const double rel =
        std::abs(fd - an) / std::max({std::abs(fd), std::abs(an), denom_floor});
    if (rel > rep.max_rel_err) {
      rep.max_rel_err = rel;
      rep.worst_index = i;
      rep.worst_slice = P.locate(i);
      rep.analytic_at_worst = an;
      rep.numeric_at_worst = fd;
    }
    ++rep.coords_checked;
  }
  return rep;
}

}  // namespace nsibf::nn
