// Dehn function of Z^2 up to length 8 against the bound Dehn(5) * 2^(n-5),
// and a few word problem decisions from that bound.

#include <iostream>

#include "gchord/gchord.hpp"

int main() {
  using namespace gchord;
  auto p = preset("z2");
  auto oracle = make_oracle(p);
  auto rep = check_dehn_bound(p, *oracle, 5, 8);
  std::cout << "c = Dehn(5) = " << rep.c << "\n";
  for (auto const& row : rep.rows) {
    std::cout << "  Dehn(" << row.n << ") = " << row.dehn << " <= " << row.bound
              << (row.exact ? "" : " (inexact)") << "\n";
  }
  for (auto const* text : {"abAB", "aabbAABB", "abbAB", "abaBAB"}) {
    auto w = solve_word_bounded(p, 5, static_cast<std::uint64_t>(rep.c), p.word(text));
    std::cout << text << ": " << to_string(w.decision) << " (" << w.method << ")\n";
  }
  auto a = area(p, *oracle, p.word("aabbAABB"));
  std::cout << "area(aabbAABB) = " << *a.area << " with " << a.filling.size() << " moves\n";
}
