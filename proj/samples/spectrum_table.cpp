// Prints dimensions and the Hodge spectrum of H^1(A^1, Sym^k Ai) for small k.
#include <cstdlib>
#include <iostream>

#include "airy/airy.hpp"

int main(int argc, char** argv) {
  const int top = argc > 1 ? std::atoi(argv[1]) : 12;
  for (int k = 2; k <= top; ++k) {
    const auto dims = airy::h1_dims(2, k);
    const auto hn = airy::hodge_numbers(k);
    std::cout << "k=" << k << "  dim " << dims.all << " (mid " << dims.mid << ")  " << airy::hodge_polynomial(hn.full)
              << "\n";
  }
  const auto g = airy::gamma(8, 4);
  std::cout << "gamma_8:";
  for (const auto& v : g.values) std::cout << ' ' << v;
  std::cout << "\n";
}
