// Steiner symmetrization of a triangle about three axes, 12 steps.

#include "mahler/mahler.hpp"

#include <cstdio>

int main() {
  using namespace mahler;
  const Body t = make_polygon({{0, 0}, {1, 0}, {0, 1}}, "triangle");
  const FlowHistory h = symmetrization_flow(t, {0.0, kPi / 3.0, 2.0 * kPi / 3.0}, 12);
  for (std::size_t i = 0; i < h.steps.size(); ++i)
    std::printf("%2zu  vp %.12f  asymmetry %.6f\n", i, h.steps[i].volume_product, h.steps[i].asymmetry);
  std::printf("final vertices %zu, target pi^2 = %.12f\n", h.final.polygon().vertices.size(), kPi * kPi);
}
