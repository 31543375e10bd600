#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mahler {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
/// Area of the unit disk; the Blaschke-Santalo bound in the plane is kPi^2.
inline constexpr double kDiskArea = std::numbers::pi;

enum class ErrorCode {
  InvalidBody,
  ConvexityViolation,
  OriginNotInterior,
  SingularMap,
  NonConvex,
  NoConvergence,
  NotSymmetric,
  SolvabilityViolation,
  NonConvexSolution,
  AliasingError,
  InsufficientData,
  NotJohnNormalizable,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidBody: return "InvalidBody";
    case ErrorCode::ConvexityViolation: return "ConvexityViolation";
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::SingularMap: return "SingularMap";
    case ErrorCode::NonConvex: return "NonConvex";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::SolvabilityViolation: return "SolvabilityViolation";
    case ErrorCode::NonConvexSolution: return "NonConvexSolution";
    case ErrorCode::AliasingError: return "AliasingError";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::NotJohnNormalizable: return "NotJohnNormalizable";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Uniform discretization of the unit circle, theta_i = 2*pi*i/n.
class AngleGrid {
 public:
  static constexpr std::size_t kDefaultSize = 1024;

  explicit AngleGrid(std::size_t n = kDefaultSize) : n_(n) {
    if (n_ < 3) throw GeometryError(ErrorCode::InvalidBody, "angle grid needs at least 3 samples");
  }

  std::size_t size() const { return n_; }
  double step() const { return kTwoPi / static_cast<double>(n_); }
  double angle(std::size_t i) const { return kTwoPi * static_cast<double>(i) / static_cast<double>(n_); }
  Vec2 direction(std::size_t i) const {
    const double t = angle(i);
    return {std::cos(t), std::sin(t)};
  }
  /// Largest Fourier degree a smooth body may carry on this grid.
  std::size_t max_degree() const { return n_ / 4; }

  bool operator==(const AngleGrid&) const = default;

 private:
  std::size_t n_;
};

inline Vec2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Maps an angle into [0, 2*pi).
inline double wrap_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

inline Mat2 rotation(double angle) {
  Mat2 r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

/// exp of the traceless symmetric matrix [[p, q], [q, -p]]; always SPD with unit determinant.
inline Mat2 exp_traceless_symmetric(double p, double q) {
  const double rho = std::hypot(p, q);
  const double c = std::cosh(rho);
  const double s = rho > 1e-300 ? std::sinh(rho) / rho : 1.0;
  Mat2 m;
  m << c + s * p, s * q, s * q, c - s * p;
  return m;
}

}  // namespace mahler
