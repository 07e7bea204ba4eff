// Heller shifts of the indecomposable Weyl modules V(lambda), lambda <= 3p.

#include <iostream>

#include "sl2sheaf/sl2sheaf.hpp"

int main(int argc, char** argv) {
  using namespace sl2sheaf;
  const std::uint32_t p = argc > 1 ? static_cast<std::uint32_t>(std::stoul(argv[1])) : 5;
  const Field k(p);
  for (long lambda = 0; lambda <= 3L * p; ++lambda) {
    if (lambda >= static_cast<long>(p) && (lambda + 1) % p == 0) continue;  // decomposable
    const HellerShift h = heller_shift(k, lambda);
    std::cout << "Omega V(" << lambda << ") = " << h.label();
    if (h.module) std::cout << "  dim " << h.module->dim() << (h.actions_equal_weyl ? "  (same matrices)" : "");
    std::cout << "\n";
  }
}
