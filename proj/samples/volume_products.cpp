// Volume products, Santalo points and Banach-Mazur distances of a few classic bodies.

#include "mahler/mahler.hpp"

#include <cstdio>

int main() {
  using namespace mahler;
  const Body bodies[] = {make_disk(), make_square(), make_regular_polygon(6),
                         make_polygon({{0, 0}, {1, 0}, {0, 1}}, "triangle"),
                         make_fourier(1.0, {0, 0, 0, 0.01}, {}, "mode4")};
  std::printf("%-10s %14s %14s %12s %10s\n", "body", "V(K)V(K^s)", "deficit", "d_BM(K,B)", "s");
  for (const auto& b : bodies) {
    const SantaloResult s = santalo_point(b);
    const double vp = area(b) * s.polar_area;
    const double d = bm_distance_disk(b).distance;
    std::printf("%-10s %14.10f %14.6e %12.8f  (%.4f, %.4f)\n", b.label.c_str(), vp, kPi * kPi / vp - 1.0, d,
                s.point.x(), s.point.y());
  }
}
