// Checks that every simple cycle of length 5..10 through e in the Cayley
// graph of Z^2 has a shortcut, and that the unit square has none.

#include <iostream>

#include "gchord/gchord.hpp"

int main() {
  using namespace gchord;
  auto p = preset("z2");
  auto ball = build_ball(make_oracle(p), required_radius(10, LengthBound::infinite()));
  auto report = check_km_chordal(ball, 5, LengthBound::infinite(), 10);
  std::cout << "ball of radius " << ball.radius() << ": " << ball.size() << " vertices\n"
            << report.cycles_checked << " cycles of length 5..10, status "
            << to_string(report.status) << "\n";

  auto square = make_cycle(ball, p.word("abAB"));
  std::cout << "shortcuts of abAB: "
            << find_shortcuts(square, ball, LengthBound::infinite(), false).size() << "\n";
}
