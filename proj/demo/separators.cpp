// Separator diameters in Z x Z4 grow with the radius; in F2 minimum cuts
// are single vertices.

#include <iostream>

#include "gchord/gchord.hpp"

int main() {
  using namespace gchord;
  auto p = preset("zxz4");
  for (int R = 4; R <= 6; ++R) {
    auto ball = build_ball(make_oracle(p), R);
    VertexSet lines;
    for (int z = -(R - 2); z <= R - 2; ++z) {
      for (auto const* s : {"b", "B"}) {
        lines.push_back(ball.at(concat(power(p.word("a"), z), p.word(s))));
      }
    }
    auto cert = certify_separator(ball, lines, ball.at(Word{}), ball.at(p.word("bb")));
    auto cut = min_vertex_cut(ball, ball.at(Word{}), ball.at(p.word("bb")));
    std::cout << "Z x Z4, R = " << R << ": two-line separator minimal="
              << cert.inclusion_minimal << " diameter=" << cert.diameter_in_ball
              << "; min cut size " << cut.p.size() << " diameter " << cut.diameter_in_ball
              << "\n";
  }

  auto f2 = preset("f2");
  auto ball = build_ball(make_oracle(f2), 4);
  auto cut = min_vertex_cut(ball, ball.at(Word{}), ball.at(f2.word("abab")));
  std::cout << "F2: min cut between e and abab is " << f2.print(vertex_word(ball, cut.p[0]))
            << " (size " << cut.p.size() << ")\n";
}
