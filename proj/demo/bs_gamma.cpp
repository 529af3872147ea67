// The cycles gamma_N in BS(1,3): gamma_2 has no shortcut at all.

#include <iostream>

#include "gchord/gchord.hpp"

int main(int argc, char** argv) {
  using namespace gchord;
  int N = argc > 1 ? std::atoi(argv[1]) : 2;
  auto p = preset("bs13");
  auto ball = build_ball(make_oracle(p), bs_gamma_radius(N));
  auto cycle = bs_gamma_N(ball, N);
  std::cout << p.print(cycle.word) << " (length " << cycle.length() << ")\n";
  for (std::size_t t = 0; t < cycle.length(); ++t) {
    std::cout << "  g" << t << " = " << ball.format(cycle.vertices[t]) << "\n";
  }
  auto cuts = find_shortcuts(cycle, ball, LengthBound::infinite(), false);
  std::cout << cuts.size() << " shortcut(s) in a ball of " << ball.size() << " vertices\n";
  for (auto const& s : cuts) {
    std::cout << "  g" << s.i - 1 << " -> g" << s.j << " via " << p.print(s.path) << "\n";
  }
}
