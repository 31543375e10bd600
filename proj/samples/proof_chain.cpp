// Inequality chain for h = 1 + t cos 4 theta.

#include "mahler/mahler.hpp"

#include <cstdio>

int main(int argc, char** argv) {
  using namespace mahler;
  const double t = argc > 1 ? std::atof(argv[1]) : 0.01;
  const ChainReport r = verify_proof_chain(make_fourier(1.0, {0, 0, 0, t}, {}, "mode4"));
  std::printf("epsilon %.6e\n", r.epsilon);
  for (const auto& c : r.checks)
    std::printf("%-26s %14.6e <= %14.6e  %s\n", c.name.c_str(), c.lhs, c.rhs,
                c.vacuous ? "vacuous" : c.passed ? "ok" : "FAIL");
  return r.passed() ? 0 : 2;
}
