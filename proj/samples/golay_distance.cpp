// Minimum distance of the ternary Golay code, printed with the witness.
#include <iostream>

#include "latdist/latdist.hpp"

int main() {
  using namespace latdist;
  const Field f = Field::prime(3);
  const SymbolMatrix g{{2, 2, 1, 2, 0, 1, 0, 0, 0, 0, 0}, {0, 2, 2, 1, 2, 0, 1, 0, 0, 0, 0},
                       {0, 0, 2, 2, 1, 2, 0, 1, 0, 0, 0}, {0, 0, 0, 2, 2, 1, 2, 0, 1, 0, 0},
                       {0, 0, 0, 0, 2, 2, 1, 2, 0, 1, 0}, {0, 0, 0, 0, 0, 2, 2, 1, 2, 0, 1}};
  const auto code = LinearCode::from_generator(f, g);
  const auto r = min_distance(code, {});
  std::cout << "d = " << r.d_best << " (" << to_string(r.status) << ")\nwitness:";
  for (Symbol s : r.witness) std::cout << ' ' << s;
  std::cout << '\n';
}
