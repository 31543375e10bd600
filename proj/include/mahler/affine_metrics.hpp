#pragma once

// John ellipse, John position, and Banach-Mazur distance estimates.

#include "mahler/body.hpp"
#include "mahler/nelder_mead.hpp"
#include "mahler/parallel.hpp"

#include <random>

namespace mahler {

/// {c + a v : |v| <= 1}; h_E(u) = <c, u> + |a u|.
struct EllipseParams {
  Mat2 shape = Mat2::Identity();
  Vec2 center = Vec2::Zero();

  double support(const Vec2& u) const { return center.dot(u) + (shape * u).norm(); }
  double area() const { return kPi * shape.determinant(); }
};

struct JohnSolution {
  EllipseParams ellipse;
  /// Duality gap m/t of the final barrier subproblem, the KKT residual.
  double duality_gap = 0.0;
  /// min over constraints of h_i - h_E(u_i), >= 0.
  double min_slack = 0.0;
  int newton_steps = 0;
};

struct JohnOptions {
  AngleGrid grid{};
  double gap_tol = 1e-10;
  /// nullopt: detect origin symmetry and pin the center at 0 if found.
  std::optional<bool> symmetric;
};

namespace detail {

struct Halfplanes {
  std::vector<Vec2> normals;
  std::vector<double> offsets;
};

/// Exact edge constraints for polygonal bodies, grid samples for smooth ones.
inline Halfplanes support_halfplanes(const Body& body, const AngleGrid& grid) {
  Halfplanes hp;
  if (body.is_fourier()) {
    const auto h = support_on_grid(body, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      hp.normals.push_back(grid.direction(i));
      hp.offsets.push_back(h[i]);
    }
  } else {
    for (const auto& e : polygon_edges(to_polygon(body))) {
      hp.normals.push_back(e.normal);
      hp.offsets.push_back(e.offset);
    }
  }
  return hp;
}

}  // namespace detail

/// Maximum-area inscribed ellipse by a log-barrier Newton method on the support constraints.
inline JohnSolution john_solve(const Body& body, const JohnOptions& opt = {}) {
  using Vec = Eigen::Matrix<double, 5, 1>;
  using Mat = Eigen::Matrix<double, 5, 5>;

  const bool sym = opt.symmetric.value_or(is_origin_symmetric(body, opt.grid));
  const auto hp = detail::support_halfplanes(body, opt.grid);
  const std::size_t m = hp.normals.size();
  // work at unit area scale
  const double scale = std::sqrt(std::abs(area(body)) / kPi);
  std::vector<double> h(m);
  for (std::size_t i = 0; i < m; ++i) h[i] = hp.offsets[i] / scale;
  const int dim = sym ? 3 : 5;

  Vec2 c0 = sym ? Vec2::Zero() : Vec2(centroid(body, opt.grid) / scale);
  double slack0 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) slack0 = std::min(slack0, h[i] - hp.normals[i].dot(c0));
  if (!(slack0 > 0.0)) throw GeometryError(ErrorCode::NoConvergence, "no interior starting point for the John ellipse");
  Vec z = Vec::Zero();
  z << 0.5 * slack0, 0.0, 0.5 * slack0, c0.x(), c0.y();

  auto shape_of = [](const Vec& v) {
    Mat2 a;
    a << v(0), v(1), v(1), v(2);
    return a;
  };
  auto feasible = [&](const Vec& v) {
    const Mat2 a = shape_of(v);
    if (!(a(0, 0) > 0.0) || !(a.determinant() > 0.0)) return false;
    const Vec2 c(v(3), v(4));
    for (std::size_t i = 0; i < m; ++i)
      if (!(h[i] - hp.normals[i].dot(c) - (a * hp.normals[i]).norm() > 0.0)) return false;
    return true;
  };
  auto barrier = [&](const Vec& v, double t, Vec* grad, Mat* hess) {
    const Mat2 a = shape_of(v);
    const double det = a.determinant();
    const Vec2 c(v(3), v(4));
    double val = -t * std::log(det);
    Vec g = Vec::Zero();
    Mat hm = Mat::Zero();
    // -t log(pr - q^2)
    Eigen::Vector3d dd(v(2), -2.0 * v(1), v(0));
    Eigen::Matrix3d d2 = Eigen::Matrix3d::Zero();
    d2(0, 2) = d2(2, 0) = 1.0;
    d2(1, 1) = -2.0;
    g.head<3>() = -t * dd / det;
    hm.topLeftCorner<3, 3>() = -t * (d2 / det - dd * dd.transpose() / (det * det));
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2& u = hp.normals[i];
      const Vec2 w = a * u;
      const double wn = w.norm();
      const double gi = h[i] - u.dot(c) - wn;
      val -= std::log(gi);
      Eigen::Matrix<double, 2, 3> j;
      j << u.x(), u.y(), 0.0, 0.0, u.x(), u.y();
      const Vec2 wh = w / wn;
      Vec dg = Vec::Zero();
      dg.head<3>() = -j.transpose() * wh;
      dg.tail<2>() = -u;
      Mat d2g = Mat::Zero();
      d2g.topLeftCorner<3, 3>() = -j.transpose() * (Mat2::Identity() - wh * wh.transpose()) * j / wn;
      const Vec dgs = dg / gi;
      g -= dgs;
      hm.noalias() += dgs * dgs.transpose();
      hm.topLeftCorner<3, 3>() -= d2g.topLeftCorner<3, 3>() / gi;
    }
    if (grad) *grad = g;
    if (hess) *hess = hm;
    return val;
  };

  JohnSolution sol;
  const double md = static_cast<double>(m);
  double t = md;
  for (int outer = 0; outer < 80; ++outer) {
    for (int inner = 0; inner < 100; ++inner) {
      Vec g;
      Mat hm;
      const double val = barrier(z, t, &g, &hm);
      const auto d = dim;
      Vec step = Vec::Zero();
      step.head(d) = -hm.topLeftCorner(d, d).ldlt().solve(g.head(d));
      const double decrement = -g.head(d).dot(step.head(d));
      ++sol.newton_steps;
      if (!(decrement > 1e-14)) break;
      // near the center Armijo is below the rounding of val, so feasible full steps are taken
      const bool quadratic = decrement < 1e-4;
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 80; ++ls) {
        const Vec trial = z + alpha * step;
        if (feasible(trial) && (quadratic || barrier(trial, t, nullptr, nullptr) <= val - 0.25 * alpha * decrement)) {
          z = trial;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved || decrement < 1e-13) break;
    }
    sol.duality_gap = md / t;
    if (sol.duality_gap <= opt.gap_tol) break;
    t *= 16.0;
  }
  if (sol.duality_gap > 1e3 * opt.gap_tol)
    throw GeometryError(ErrorCode::NoConvergence, "John ellipse barrier method did not converge");

  sol.ellipse.shape = scale * shape_of(z);
  sol.ellipse.center = scale * Vec2(z(3), z(4));
  sol.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i)
    sol.min_slack = std::min(sol.min_slack, hp.offsets[i] - sol.ellipse.support(hp.normals[i]));
  return sol;
}

inline EllipseParams john_ellipse(const Body& body, const JohnOptions& opt = {}) { return john_solve(body, opt).ellipse; }

/// Image of the body under the inverse John map, whose John ellipse is the unit disk.
inline std::pair<Body, AffineMap> john_position(const Body& body, const JohnOptions& opt = {}) {
  const EllipseParams e = john_ellipse(body, opt);
  const Mat2 inv = e.shape.inverse();
  const AffineMap map{inv, -inv * e.center};
  return {affine_image(body, map, opt.grid), map};
}

// ---------------------------------------------------------------------------
// Banach-Mazur estimates

struct BmEstimate {
  /// Upper bound on d_BM.
  double distance = std::numeric_limits<double>::infinity();
  /// Disk: witness(K) lies between r B and distance * r B.
  /// Pair: K is contained in witness(L), which lies in the distance-homothet of K about its center.
  AffineMap witness;
  /// (worst - best) / best over the starts.
  double multistart_spread = 0.0;
  double inner_radius = 0.0;
  /// Homothety center used on K (pair estimates).
  Vec2 center = Vec2::Zero();
};

struct BmOptions {
  AngleGrid grid{};
  int starts = 8;
  std::uint64_t seed = 0;
  /// nullopt: search translations iff the input is not origin-symmetric.
  std::optional<bool> translate;
};

namespace detail {

inline Mat2 spd_log(const Mat2& a) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(a);
  const Eigen::Vector2d l = es.eigenvalues().array().log();
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().transpose();
}

/// min/max support of body about the origin after the map; +inf ratio if the origin is not interior.
class RadialRatio {
 public:
  RadialRatio(const Body& body, const AngleGrid& grid) : support_(body) {
    if (const Polygon* p = support_.polygon()) poly_ = p->vertices;
    for (std::size_t i = 0; i < grid.size(); ++i) dirs_.push_back(grid.direction(i));
  }

  /// Ratio max h / min h of map(K) for map x -> phi (x - x0), phi symmetric.
  std::pair<double, double> radii(const Mat2& phi, const Vec2& x0) const {
    double rmin = std::numeric_limits<double>::infinity();
    double rmax = 0.0;
    if (!poly_.empty()) {
      const std::size_t n = poly_.size();
      std::vector<Vec2> w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = phi * (poly_[i] - x0);
      for (std::size_t i = 0; i < n; ++i) {
        rmax = std::max(rmax, w[i].norm());
        const Vec2 d = w[(i + 1) % n] - w[i];
        rmin = std::min(rmin, cross(w[i], d) / d.norm());
      }
    } else {
      const Mat2 pt = phi.transpose();
      for (const auto& u : dirs_) {
        const Vec2 v = pt * u;
        const double h = support_.at(v) - x0.dot(v);
        rmin = std::min(rmin, h);
        rmax = std::max(rmax, h);
      }
    }
    return {rmin, rmax};
  }

 private:
  SupportFunction support_;
  std::vector<Vec2> poly_;
  std::vector<Vec2> dirs_;
};

inline double spread(const std::vector<double>& values) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double v : values)
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  return std::isfinite(lo) && lo > 0.0 ? (hi - lo) / lo : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// Upper bound on d_BM(K, B): min over unit-determinant SPD maps and centers of max h / min h.
inline BmEstimate bm_distance_disk(const Body& body, const BmOptions& opt = {}) {
  const bool translate = opt.translate.value_or(!is_origin_symmetric(body, opt.grid));
  const double scale = std::sqrt(std::abs(area(body)) / kPi);
  const detail::RadialRatio ratio(body, opt.grid);

  JohnOptions jopt;
  jopt.grid = opt.grid;
  jopt.symmetric = !translate;
  const EllipseParams john = john_ellipse(body, jopt);
  const Mat2 logm = -detail::spd_log(john.shape);
  const double p0 = 0.5 * (logm(0, 0) - logm(1, 1));
  const double q0 = logm(0, 1);

  const int dim = translate ? 4 : 2;
  auto unpack = [&](const Eigen::VectorXd& z) {
    const Mat2 phi = exp_traceless_symmetric(z(0), z(1));
    const Vec2 x = translate ? Vec2(scale * z(2), scale * z(3)) : Vec2::Zero();
    return std::pair{phi, x};
  };
  auto objective = [&](const Eigen::VectorXd& z) {
    const auto [phi, x] = unpack(z);
    const auto [rmin, rmax] = ratio.radii(phi, x);
    if (!(rmin > 0.0)) return std::numeric_limits<double>::infinity();
    return rmax / rmin;
  };

  const auto starts = static_cast<std::size_t>(std::max(1, opt.starts));
  std::vector<Eigen::VectorXd> best_x(starts);
  std::vector<double> best_v(starts, std::numeric_limits<double>::infinity());
  parallel_for(starts, [&](std::size_t s) {
    Eigen::VectorXd z(dim);
    z(0) = p0;
    z(1) = q0;
    if (translate) {
      z(2) = john.center.x() / scale;
      z(3) = john.center.y() / scale;
    }
    if (s > 0) {
      std::mt19937_64 rng(opt.seed * 1000003ULL + s);
      std::normal_distribution<double> nd(0.0, 1.0);
      z(0) += 0.15 * nd(rng);
      z(1) += 0.15 * nd(rng);
      if (translate) {
        z(2) += 0.05 * nd(rng);
        z(3) += 0.05 * nd(rng);
      }
    }
    if (!std::isfinite(objective(z)) && translate) {
      z(2) = john.center.x() / scale;
      z(3) = john.center.y() / scale;
    }
    const auto r = nelder_mead(objective, z);
    best_x[s] = r.x;
    best_v[s] = r.value;
  });

  std::size_t arg = 0;
  for (std::size_t s = 1; s < starts; ++s)
    if (best_v[s] < best_v[arg]) arg = s;
  if (!std::isfinite(best_v[arg])) throw GeometryError(ErrorCode::NoConvergence, "no feasible Banach-Mazur configuration");

  BmEstimate est;
  const auto [phi, x] = unpack(best_x[arg]);
  const auto [rmin, rmax] = ratio.radii(phi, x);
  est.distance = rmax / rmin;
  est.inner_radius = rmin;
  est.witness = AffineMap{phi, -phi * x};
  est.multistart_spread = detail::spread(best_v);
  est.center = x;
  return est;
}

/// Upper bound on d_BM(K, L) by support dominance on the grid.
inline BmEstimate bm_distance_pair(const Body& k, const Body& l, const BmOptions& opt = {}) {
  const bool translate =
      opt.translate.value_or(!(is_origin_symmetric(k, opt.grid) && is_origin_symmetric(l, opt.grid)));
  const AngleGrid& grid = opt.grid;
  const auto hk = support_on_grid(k, grid);
  const SupportFunction hl(l);
  std::vector<Vec2> dirs;
  for (std::size_t i = 0; i < grid.size(); ++i) dirs.push_back(grid.direction(i));
  const double scale_k = std::sqrt(std::abs(area(k)) / kPi);
  const double scale_l = std::sqrt(std::abs(area(l)) / kPi);

  JohnOptions jopt;
  jopt.grid = grid;
  if (!translate) jopt.symmetric = true;
  const EllipseParams ek = john_ellipse(k, jopt);
  const EllipseParams el = john_ellipse(l, jopt);

  const int dim = translate ? 7 : 3;
  const auto starts = static_cast<std::size_t>(std::max(1, opt.starts));
  const std::size_t rotations = std::max<std::size_t>(1, (starts + 1) / 2);

  // scale-free ratio of support functions for a configuration
  struct Eval {
    double lambda;
    double s;
    Mat2 phi;
    Vec2 x;
    Vec2 y;
  };
  auto evaluate = [&](const Mat2& base, const Eigen::VectorXd& z) -> Eval {
    const Mat2 phi = base * rotation(z(0)) * exp_traceless_symmetric(z(1), z(2));
    const Vec2 x = translate ? Vec2(ek.center + scale_k * Vec2(z(3), z(4))) : Vec2::Zero();
    const Vec2 y = translate ? Vec2(el.center + scale_l * Vec2(z(5), z(6))) : Vec2::Zero();
    const Mat2 pt = phi.transpose();
    double rmin = std::numeric_limits<double>::infinity();
    double rmax = 0.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const Vec2 v = pt * dirs[i];
      const double ht = hl.at(v) - y.dot(v);
      const double hkx = hk[i] - x.dot(dirs[i]);
      if (!(ht > 0.0) || !(hkx > 0.0)) return {std::numeric_limits<double>::infinity(), 0.0, phi, x, y};
      const double r = ht / hkx;
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
    // K - x within s T, s T within lambda (K - x)
    return {rmax / rmin, 1.0 / rmin, phi, x, y};
  };

  std::vector<Eigen::VectorXd> best_x(starts);
  std::vector<double> best_v(starts, std::numeric_limits<double>::infinity());
  std::vector<Mat2> bases(starts);
  parallel_for(starts, [&](std::size_t s) {
    const double angle = kPi * static_cast<double>(s % rotations) / static_cast<double>(rotations);
    Mat2 flip = Mat2::Identity();
    if (s >= rotations) flip(1, 1) = -1.0;
    // maps the John ellipse of L onto that of K (up to rotation and reflection)
    const Mat2 base = ek.shape * rotation(angle) * flip * el.shape.inverse();
    bases[s] = base;
    const Eigen::VectorXd z0 = Eigen::VectorXd::Zero(dim);
    NelderMeadOptions nm;
    nm.initial_step = 0.05;
    const auto r = nelder_mead([&](const Eigen::VectorXd& z) { return evaluate(base, z).lambda; }, z0, nm);
    best_x[s] = r.x;
    best_v[s] = r.value;
  });

  std::size_t arg = 0;
  for (std::size_t s = 1; s < starts; ++s)
    if (best_v[s] < best_v[arg]) arg = s;
  if (!std::isfinite(best_v[arg])) throw GeometryError(ErrorCode::NoConvergence, "no feasible Banach-Mazur configuration");

  const Eval e = evaluate(bases[arg], best_x[arg]);
  BmEstimate est;
  est.distance = e.lambda;
  // z -> x + s phi (z - y)
  est.witness = AffineMap{e.s * e.phi, e.x - e.s * e.phi * e.y};
  est.multistart_spread = detail::spread(best_v);
  est.center = e.x;
  est.inner_radius = 1.0;
  return est;
}

}  // namespace mahler
