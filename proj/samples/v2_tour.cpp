// V(2) over F_5: action matrices, the global operator on P^1, its Jordan
// type profile and the kernel sheaf.

#include <iostream>

#include "sl2sheaf/sl2sheaf.hpp"

int main() {
  using namespace sl2sheaf;
  const Sl2Module V = weyl(5, 2);
  std::cout << V.label() << "\nE =\n" << V.e().to_string() << "F =\n" << V.f().to_string() << "H =\n" << V.h().to_string();

  const HomMatrix theta = build_theta(V);
  std::cout << "Theta =\n";
  for (std::size_t i = 0; i < theta.rows(); ++i) {
    for (std::size_t j = 0; j < theta.cols(); ++j) std::cout << (j ? "  " : "  [") << theta.entry_string(i, j);
    std::cout << "]\n";
  }

  std::cout << "Jordan type: " << profile_summary(jordan_profile(V)) << "\n";
  std::cout << "Ker Theta = " << kernel_sheaf(V).splitting.to_string() << "\n";

  // a module with a non-constant profile
  const Sl2Module P = phi(7, PointP1::affine(Field(5), 1));
  std::cout << P.label() << ": " << profile_summary(jordan_profile(P)) << "\n";
}
