#pragma once

#include "mahler/core.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <complex>
#include <span>
#include <vector>

namespace mahler {

/// Real trigonometric series c0 + sum_k a_k cos(k t) + b_k sin(k t); a[k-1], b[k-1] hold degree k.
struct TrigSeries {
  double c0 = 0.0;
  std::vector<double> a;
  std::vector<double> b;

  std::size_t degree() const { return a.size(); }

  double operator()(double theta) const {
    const std::complex<double> step(std::cos(theta), std::sin(theta));
    std::complex<double> z = step;
    double sum = c0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      sum += a[k] * z.real() + b[k] * z.imag();
      z *= step;
      // re-anchor the recurrence every 64 steps to bound drift
      if ((k & 63u) == 63u) {
        const double t = static_cast<double>(k + 2) * theta;
        z = {std::cos(t), std::sin(t)};
      }
    }
    return sum;
  }

  /// Series with every degree-k term multiplied by factor(k); factor(0) applies to c0.
  template <class F>
  TrigSeries scaled(F&& factor) const {
    TrigSeries out{c0 * factor(0), a, b};
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double s = factor(k + 1);
      out.a[k] *= s;
      out.b[k] *= s;
    }
    return out;
  }

  TrigSeries derivative() const {
    TrigSeries out{0.0, std::vector<double>(a.size()), std::vector<double>(a.size())};
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double kk = static_cast<double>(k + 1);
      out.a[k] = kk * b[k];
      out.b[k] = -kk * a[k];
    }
    return out;
  }

  /// Drops trailing degrees whose magnitude is below rel_tol * |c0| (or rel_tol if c0 == 0).
  void trim(double rel_tol = 1e-17) {
    const double scale = std::max(std::abs(c0), 1e-300);
    std::size_t n = a.size();
    while (n > 0 && std::hypot(a[n - 1], b[n - 1]) <= rel_tol * scale) --n;
    a.resize(n);
    b.resize(n);
  }

  void truncate(std::size_t max_degree) {
    if (a.size() > max_degree) {
      a.resize(max_degree);
      b.resize(max_degree);
    }
  }
};

/// Samples of a series on the uniform grid, via inverse FFT when the degree fits.
inline std::vector<double> sample_series(const TrigSeries& s, const AngleGrid& grid) {
  const std::size_t n = grid.size();
  std::vector<double> out(n);
  if (s.degree() < n / 2) {
    std::vector<std::complex<double>> spec(n, {0.0, 0.0});
    spec[0] = {s.c0 * static_cast<double>(n), 0.0};
    for (std::size_t k = 1; k <= s.degree(); ++k) {
      const std::complex<double> c(0.5 * static_cast<double>(n) * s.a[k - 1],
                                   -0.5 * static_cast<double>(n) * s.b[k - 1]);
      spec[k] = c;
      spec[n - k] = std::conj(c);
    }
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> time;
    fft.inv(time, spec);
    for (std::size_t i = 0; i < n; ++i) out[i] = time[i].real();
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = s(grid.angle(i));
  return out;
}

/// Trigonometric interpolant of grid samples; degree n/2 with the Nyquist term folded into a.
inline TrigSeries analyze_samples(std::span<const double> values) {
  const std::size_t n = values.size();
  Eigen::FFT<double> fft;
  std::vector<double> in(values.begin(), values.end());
  std::vector<std::complex<double>> spec;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  fft.fwd(spec, in);
  const double inv_n = 1.0 / static_cast<double>(n);
  TrigSeries s;
  s.c0 = spec[0].real() * inv_n;
  const std::size_t top = n / 2;
  s.a.assign(top, 0.0);
  s.b.assign(top, 0.0);
  for (std::size_t k = 1; k <= top; ++k) {
    if (2 * k == n) {
      s.a[k - 1] = spec[k].real() * inv_n;
    } else {
      s.a[k - 1] = 2.0 * spec[k].real() * inv_n;
      s.b[k - 1] = -2.0 * spec[k].imag() * inv_n;
    }
  }
  return s;
}

namespace detail {

// integral over [lo, hi] of cos(m t + phase)
inline double int_cos(double m, double phase, double lo, double hi) {
  if (m == 0.0) return (hi - lo) * std::cos(phase);
  return (std::sin(m * hi + phase) - std::sin(m * lo + phase)) / m;
}

// integral over [lo, hi] of sin(m t + phase)
inline double int_sin(double m, double phase, double lo, double hi) {
  if (m == 0.0) return (hi - lo) * std::sin(phase);
  return -(std::cos(m * hi + phase) - std::cos(m * lo + phase)) / m;
}

}  // namespace detail

/// Exact integral over [lo, hi] of <v, u(t)> * cos(k t) and <v, u(t)> * sin(k t).
inline std::pair<double, double> integrate_linear_times_mode(const Vec2& v, std::size_t k, double lo,
                                                             double hi) {
  // <v, u(t)> = r cos(t - phi)
  const double r = v.norm();
  if (r == 0.0) return {0.0, 0.0};
  const double phi = std::atan2(v.y(), v.x());
  const double kk = static_cast<double>(k);
  // cos(t-phi)cos(kt) = (cos((k+1)t - phi) + cos((k-1)t + phi)) / 2
  const double c = 0.5 * r * (detail::int_cos(kk + 1.0, -phi, lo, hi) + detail::int_cos(kk - 1.0, phi, lo, hi));
  // cos(t-phi)sin(kt) = (sin((k+1)t - phi) + sin((k-1)t + phi)) / 2
  const double s = 0.5 * r * (detail::int_sin(kk + 1.0, -phi, lo, hi) + detail::int_sin(kk - 1.0, phi, lo, hi));
  return {c, s};
}

/// Exact integral over [lo, hi] of <v, u(t)> * series(t).
inline double integrate_linear_times_series(const Vec2& v, const TrigSeries& s, double lo, double hi) {
  double sum = s.c0 * integrate_linear_times_mode(v, 0, lo, hi).first;
  for (std::size_t k = 1; k <= s.degree(); ++k) {
    const auto [c, si] = integrate_linear_times_mode(v, k, lo, hi);
    sum += s.a[k - 1] * c + s.b[k - 1] * si;
  }
  return sum;
}

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on the Legendre recurrence).
inline void gauss_legendre(std::size_t order, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  const double n = static_cast<double>(order);
  for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t j = 2; j <= order; ++j) {
        const double jj = static_cast<double>(j);
        const double p2 = ((2.0 * jj - 1.0) * x * p1 - (jj - 1.0) * p0) / jj;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[order - 1 - i] = w;
  }
}

}  // namespace mahler
