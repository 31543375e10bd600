#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace mahler {

struct NelderMeadOptions {
  double initial_step = 0.05;
  double f_tol = 1e-13;
  double x_tol = 1e-11;
  int max_evaluations = 4000;
  /// Fresh simplices built around the incumbent after convergence.
  int restarts = 3;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = std::numeric_limits<double>::infinity();
  int evaluations = 0;
};

/// Derivative-free local minimization with restarts; the objective may return +inf outside its domain.
inline NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn, Eigen::VectorXd x0,
                                    const NelderMeadOptions& opt = {}) {
  const auto dim = static_cast<std::size_t>(x0.size());
  NelderMeadResult best{x0, fn(x0), 1};
  if (dim == 0) return best;

  double step = opt.initial_step;
  for (int round = 0; round <= opt.restarts && best.evaluations < opt.max_evaluations; ++round) {
    std::vector<Eigen::VectorXd> pts(dim + 1, best.x);
    std::vector<double> vals(dim + 1, best.value);
    for (std::size_t i = 0; i < dim; ++i) {
      pts[i + 1](static_cast<Eigen::Index>(i)) += step;
      vals[i + 1] = fn(pts[i + 1]);
      ++best.evaluations;
    }
    std::vector<std::size_t> order(dim + 1);
    while (best.evaluations < opt.max_evaluations) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
      const std::size_t lo = order.front();
      const std::size_t hi = order.back();
      const std::size_t second = order[dim - 1];

      double spread_x = 0.0;
      for (std::size_t i = 0; i <= dim; ++i) spread_x = std::max(spread_x, (pts[i] - pts[lo]).cwiseAbs().maxCoeff());
      const double spread_f = vals[hi] - vals[lo];
      if (std::isfinite(spread_f) && spread_f <= opt.f_tol * std::max(1.0, std::abs(vals[lo])) && spread_x <= opt.x_tol)
        break;
      if (spread_x <= opt.x_tol * 1e-3) break;

      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
      for (std::size_t i = 0; i <= dim; ++i)
        if (i != hi) centroid += pts[i];
      centroid /= static_cast<double>(dim);

      auto eval = [&](const Eigen::VectorXd& p) {
        ++best.evaluations;
        return fn(p);
      };
      const Eigen::VectorXd xr = centroid + (centroid - pts[hi]);
      const double fr = eval(xr);
      if (fr < vals[lo]) {
        const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[hi]);
        const double fe = eval(xe);
        if (fe < fr) {
          pts[hi] = xe;
          vals[hi] = fe;
        } else {
          pts[hi] = xr;
          vals[hi] = fr;
        }
        continue;
      }
      if (fr < vals[second]) {
        pts[hi] = xr;
        vals[hi] = fr;
        continue;
      }
      const bool outside = fr < vals[hi];
      const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                         : Eigen::VectorXd(centroid + 0.5 * (pts[hi] - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : vals[hi])) {
        pts[hi] = xc;
        vals[hi] = fc;
        continue;
      }
      for (std::size_t i = 0; i <= dim; ++i) {
        if (i == lo) continue;
        pts[i] = pts[lo] + 0.5 * (pts[i] - pts[lo]);
        vals[i] = eval(pts[i]);
      }
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    const auto idx = static_cast<std::size_t>(it - vals.begin());
    const bool improved = *it < best.value - opt.f_tol * std::max(1.0, std::abs(best.value));
    if (*it <= best.value) {
      best.x = pts[idx];
      best.value = *it;
    }
    if (!improved && round > 0) break;
    step *= 0.25;
  }
  return best;
}

}  // namespace mahler
