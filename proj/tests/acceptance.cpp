// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gchord/gchord.hpp"

using namespace gchord;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

CayleyBall ball_of(char const* name, int radius) {
  return build_ball(make_oracle(preset(name)), radius);
}

std::string join(std::vector<int> const& v) {
  std::string out;
  for (std::size_t t = 0; t < v.size(); ++t) {
    out += (t ? "," : "") + std::to_string(v[t]);
  }
  return out;
}

Outcome z2_five_chordal() {
  auto p = preset("z2");
  auto ball = build_ball(make_oracle(p), 10);
  auto r = check_km_chordal(ball, 5, LengthBound::infinite(), 10, 4);
  auto square = find_shortcuts(make_cycle(ball, p.word("abAB")), ball, LengthBound::infinite(),
                               false);
  bool pass = r.status == ChordalStatus::verified_up_to_bound && square.empty();
  return {pass, std::to_string(r.cycles_checked) + " cycles of length 5..10 all have shortcuts; "
                    "abAB has " + std::to_string(square.size()) + " shortcuts"};
}

Outcome g2_six_chordal() {
  auto ball = ball_of("bs12", 10);
  auto r = check_km_chordal(ball, 6, LengthBound::infinite(), 10, 4);
  std::string detail = std::to_string(r.cycles_checked) + " cycles of length 6..10 in " +
                       std::to_string(ball.size()) + " vertices";
  if (r.witness) {
    detail += "; no shortcut on " + preset("bs12").print(r.witness->word);
  }
  return {r.status == ChordalStatus::verified_up_to_bound, detail};
}

Outcome gamma_shortcut_free() {
  auto p = preset("bs13");
  bool pass = true;
  std::string detail;
  for (int N : {1, 2}) {
    auto ball = build_ball(make_oracle(p), bs_gamma_radius(N));
    auto cycle = bs_gamma_N(ball, N);
    auto cuts = find_shortcuts(cycle, ball, LengthBound::infinite(), false);
    detail += (N > 1 ? "; " : "") + std::string("gamma_") + std::to_string(N) + " (L=" +
              std::to_string(cycle.length()) + ", R=" + std::to_string(ball.radius()) + "): " +
              std::to_string(cuts.size()) + " shortcuts";
    for (auto const& s : cuts) {
      detail += " [g" + std::to_string(s.i - 1) + "->g" + std::to_string(s.j) + " via " +
                p.print(s.path) + "]";
    }
    pass = pass && cuts.empty();
  }
  return {pass, detail};
}

// Every group geodesic of length <= 8 is a left translate of one starting at
// e, and those all lie in the radius-8 ball.
Outcome three_b_edges() {
  auto ball = ball_of("bs12", 10);
  std::size_t geodesics = 0;
  std::size_t violations = 0;
  for (Vertex v = 1; v < ball.size() && ball.dist0(v) <= 8; ++v) {
    auto g = enumerate_geodesics(ball, 0, v, 10'000'000);
    if (g.truncated || !g.complete_in_graph) {
      return {false, "geodesic enumeration incomplete at " + ball.format(v)};
    }
    for (auto const& w : g.words) {
      auto path = path_vertices(ball, 0, w);
      std::map<std::int64_t, int> count;
      for (std::size_t t = 0; t < w.size(); ++t) {
        if (w[t].generator != 1) {
          continue;
        }
        auto h = std::max(BSOracle::height(ball.element(path[t])),
                          BSOracle::height(ball.element(path[t + 1])));
        if (++count[h] == 3) {
          ++violations;
        }
      }
      ++geodesics;
    }
  }
  return {violations == 0, std::to_string(geodesics) + " geodesics from e of length <= 8, " +
                               std::to_string(violations) + " violations"};
}

Outcome geodesic_lengths() {
  auto p = preset("bs13");
  auto ball = build_ball(make_oracle(p), 10);
  std::size_t checked = 0;
  std::size_t wrong = 0;
  for (Vertex x = 0; x < ball.size() && ball.dist0(x) <= 2; ++x) {
    auto d = bfs(ball, x);
    for (int k = 0; k <= 3; ++k) {
      for (int k2 = 0; k2 <= 3; ++k2) {
        Word w = concat(concat(power(p.word("b"), k), p.word("a")), power(p.word("b"), -k2));
        auto y = ball.walk(x, w);
        if (!y || d[*y] != k + k2 + 1) {
          ++wrong;
        }
        ++checked;
      }
    }
  }
  return {wrong == 0, std::to_string(checked) + " pairs, " + std::to_string(wrong) + " mismatches"};
}

Outcome separator_contrast() {
  auto p = preset("zxz4");
  std::vector<int> diameters;
  bool pass = true;
  for (int R = 4; R <= 6; ++R) {
    auto ball = build_ball(make_oracle(p), R);
    VertexSet lines;
    for (int z = -(R - 2); z <= R - 2; ++z) {
      lines.push_back(ball.at(concat(power(p.word("a"), z), p.word("b"))));
      lines.push_back(ball.at(concat(power(p.word("a"), z), p.word("B"))));
    }
    auto cert = certify_separator(ball, lines, 0, ball.at(p.word("bb")));
    pass = pass && cert.separates && cert.inclusion_minimal;
    diameters.push_back(cert.diameter_in_ball);
  }
  pass = pass && std::is_sorted(diameters.begin(), diameters.end()) &&
         std::adjacent_find(diameters.begin(), diameters.end()) == diameters.end();
  std::size_t cuts = 0;
  std::size_t non_singleton = 0;
  for (int R = 2; R <= 4; ++R) {
    auto ball = ball_of("f2", R);
    for (Vertex x = 0; x < ball.size(); ++x) {
      if (ball.dist0(x) < 2) {
        continue;
      }
      auto cut = min_vertex_cut(ball, 0, x, 2);
      if (cut.p.size() != 1 || cut.diameter_in_ball != 0 || !cut.inclusion_minimal) {
        ++non_singleton;
      }
      ++cuts;
    }
  }
  pass = pass && non_singleton == 0;
  return {pass, "Z x Z4 two-line diameters " + join(diameters) + " at R=4,5,6; F2 " +
                    std::to_string(cuts) + " min cuts, " + std::to_string(non_singleton) +
                    " not singletons"};
}

Outcome bp_trend() {
  bool pass = true;
  std::string detail = "F2 BP";
  for (int R = 2; R <= 4; ++R) {
    auto ball = ball_of("f2", 2 * R);
    auto est = estimate_bp(ball, opposite_pairs(ball, R), 2);
    detail += " " + est.value.to_string();
    pass = pass && est.value == Rational(0);
  }
  auto p = preset("z2");
  detail += "; Z2 pair";
  for (int r = 2; r <= 3; ++r) {
    auto ball = build_ball(make_oracle(p), 2 * r);
    auto est = estimate_bp(ball, {{ball.at(power(p.word("a"), -r)), ball.at(power(p.word("a"), r))}},
                           2);
    detail += " r=" + std::to_string(r) + ":" + est.value.to_string();
    pass = pass && est.value == Rational(r);
  }
  return {pass, detail};
}

Outcome hyperbolicity() {
  bool pass = true;
  std::string detail = "F2 delta";
  for (int R = 2; R <= 5; ++R) {
    auto d = delta_four_point(ball_of("f2", R), std::nullopt, 2).value;
    detail += " " + d.to_string();
    pass = pass && d == Rational(0);
  }
  auto p = preset("z2");
  auto ball = build_ball(make_oracle(p), 4);
  DistanceMatrix dm(ball, 2);
  std::array<Vertex, 4> q{0, ball.at(p.word("aa")), ball.at(p.word("bb")), ball.at(p.word("aabb"))};
  std::array<int, 3> sums{dm(q[0], q[1]) + dm(q[2], q[3]), dm(q[0], q[2]) + dm(q[1], q[3]),
                          dm(q[0], q[3]) + dm(q[1], q[2])};
  std::sort(sums.begin(), sums.end());
  Rational witness(sums[2] - sums[1], 2);
  auto at4 = delta_four_point(ball, std::nullopt, 2).value;
  detail += "; Z2 witness (e,a^2,b^2,a^2b^2) gives " + witness.to_string() + ", R=4 scan " +
            at4.to_string() + ", R=2..6:";
  pass = pass && witness >= Rational(2) && at4 >= witness;
  Rational prev(0);
  for (int R = 2; R <= 6; ++R) {
    auto d = delta_four_point(ball_of("z2", R), std::nullopt, 2).value;
    detail += " " + d.to_string();
    pass = pass && prev <= d;
    prev = d;
  }
  return {pass, detail};
}

Outcome dehn_bound() {
  auto p = preset("z2");
  auto rep = check_dehn_bound(p, *make_oracle(p), 5, 8, {}, 2);
  std::string detail = "c=" + std::to_string(rep.c);
  bool pass = rep.c == 1 && rep.c_exact && rep.status == DehnBoundStatus::holds;
  std::vector<std::pair<int, std::uint64_t>> want{{2, 2}, {2, 4}, {4, 8}};
  for (std::size_t t = 0; t < rep.rows.size(); ++t) {
    auto const& r = rep.rows[t];
    detail += ", Dehn(" + std::to_string(r.n) + ")=" + std::to_string(r.dehn) +
              " <= " + std::to_string(r.bound);
    pass = pass && r.exact && t < want.size() && want[t] == std::make_pair(r.dehn, r.bound);
  }
  pass = pass && rep.rows.size() == want.size();
  return {pass, detail};
}

Outcome word_problem() {
  auto p = preset("z2");
  auto o = make_oracle(p);
  std::mt19937_64 rng(20251015);
  auto letter = [&] { return Letter::from_code(rng() % 4); };
  auto random_word = [&](std::size_t max_len) {
    Word w;
    for (std::size_t t = 1 + rng() % max_len; t > 0; --t) {
      w.letters.push_back(letter());
    }
    return w;
  };
  Word rel = p.relators.at(0);
  int trivial_ok = 0;
  int nontrivial_ok = 0;
  int exceeded = 0;
  int made = 0;
  while (made < 100) {
    Word w;
    for (std::size_t c = 1 + rng() % 3; c > 0; --c) {
      Word u = free_reduce(random_word(3));
      w = concat(w, concat(concat(u, rng() % 2 ? rel : inverse(rel)), inverse(u)));
    }
    w = free_reduce(w);
    if (w.size() > 10 || w.empty()) {
      continue;
    }
    ++made;
    auto rep = solve_word_bounded(p, 5, 1, w);
    trivial_ok += rep.decision == WordDecision::trivial && o->is_identity(w);
    exceeded += rep.decision == WordDecision::resource_exceeded;
  }
  made = 0;
  while (made < 100) {
    Word w = random_word(10);
    if (exponent_sum(w, 0) == 0 && exponent_sum(w, 1) == 0) {
      continue;
    }
    ++made;
    auto rep = solve_word_bounded(p, 5, 1, w);
    nontrivial_ok += rep.decision == WordDecision::nontrivial;
    exceeded += rep.decision == WordDecision::resource_exceeded;
  }
  return {trivial_ok == 100 && nontrivial_ok == 100 && exceeded == 0,
          std::to_string(trivial_ok) + "/100 trivial, " + std::to_string(nontrivial_ok) +
              "/100 nontrivial, " + std::to_string(exceeded) + " resource_exceeded"};
}

Outcome dense_implies_gap() {
  bool pass = true;
  std::string detail;
  struct Case {
    char const* group;
    int k;
  };
  for (auto [group, k] : {Case{"z2", 5}, Case{"bs12", 6}}) {
    auto ball = ball_of(group, 10);
    std::size_t dense_pass = 0;
    std::size_t broken = 0;
    for (int eps = 1; eps <= 4; ++eps) {
      auto dense = check_densely_chordal(ball, eps, k, LengthBound::infinite(), 10, 4);
      auto gap = check_ikm_chordal(ball, 2 * eps, k, LengthBound::infinite(), 10, 4);
      if (dense.verdicts.size() != gap.verdicts.size()) {
        return {false, "cycle lists differ"};
      }
      for (std::size_t t = 0; t < dense.verdicts.size(); ++t) {
        if (dense.verdicts[t].passes) {
          ++dense_pass;
          broken += !gap.verdicts[t].passes;
        }
      }
    }
    detail += std::string(detail.empty() ? "" : "; ") + group + ": " + std::to_string(dense_pass) +
              " dense passes over eps=1..4, " + std::to_string(broken) + " gap failures";
    pass = pass && broken == 0 && dense_pass > 0;
  }
  return {pass, detail};
}

// Simple closed walks from the origin of Z2 by brute force, one per reversal pair.
std::set<std::string> brute_force_z2_cycles(Presentation const& p, int lmax) {
  std::set<std::string> out;
  using Point = std::array<std::int64_t, 2>;
  std::function<void(Word&, std::vector<Point>&)> grow = [&](Word& w, std::vector<Point>& pts) {
    if (w.size() >= 3 && pts.back() == pts.front()) {
      if (w < inverse(w)) {
        out.insert(p.print(w));
      }
      return;
    }
    if (static_cast<int>(w.size()) == lmax) {
      return;
    }
    for (std::size_t c = 0; c < 4; ++c) {
      Letter s = Letter::from_code(c);
      Point next = pts.back();
      next[s.generator] += s.sign;
      bool closes = next == pts.front();
      if (std::find(pts.begin() + 1, pts.end(), next) != pts.end() || (closes && w.size() < 2)) {
        continue;
      }
      w.letters.push_back(s);
      pts.push_back(next);
      grow(w, pts);
      pts.pop_back();
      w.letters.pop_back();
    }
  };
  Word w;
  std::vector<Point> pts{{0, 0}};
  grow(w, pts);
  return out;
}

Outcome property_suites() {
  std::vector<std::string> failed;
  std::mt19937_64 rng(12);
  auto random_word = [&](std::size_t gens, std::size_t max_len) {
    Word w;
    for (std::size_t t = rng() % (max_len + 1); t > 0; --t) {
      w.letters.push_back(Letter::from_code(rng() % (2 * gens)));
    }
    return w;
  };

  bool ok = true;
  for (int t = 0; t < 2000; ++t) {
    Word w = random_word(2, 16);
    Word r = free_reduce(w);
    ok = ok && free_reduce(r) == r && is_freely_reduced(r) && free_reduce(concat(w, inverse(w))).empty();
  }
  if (!ok) {
    failed.push_back("free reduction");
  }

  ok = true;
  for (auto name : {"f2", "z2", "zxz4", "bs12", "bs13"}) {
    auto p = preset(name);
    auto o = make_oracle(p);
    for (auto const& r : p.relators) {
      ok = ok && o->is_identity(r);
    }
    for (int t = 0; t < 300; ++t) {
      Word x = random_word(2, 10);
      Word y = random_word(2, 10);
      ok = ok && o->normalize(concat(x, y)) == o->multiply(o->normalize(x), o->normalize(y));
    }
  }
  if (!ok) {
    failed.push_back("oracle homomorphism");
  }

  ok = true;
  auto z = preset("z2");
  for (int lmax = 3; lmax <= 6; ++lmax) {
    auto ball = build_ball(make_oracle(z), lmax);
    std::set<std::string> found;
    for (auto const& c : enumerate_simple_cycles(ball, lmax, 2)) {
      found.insert(z.print(c.word));
    }
    ok = ok && found == brute_force_z2_cycles(z, lmax);
  }
  if (!ok) {
    failed.push_back("cycle enumeration");
  }

  ok = true;
  std::size_t shortcuts = 0;
  for (auto name : {"z2", "bs12"}) {
    auto ball = ball_of(name, 8);
    for (auto const& c : enumerate_simple_cycles(ball, 8, 2)) {
      if (max_dist0(ball, c) + ceil_half(static_cast<int>(c.length())) > ball.radius()) {
        continue;
      }
      for (bool strict : {false, true}) {
        for (auto const& s : find_shortcuts(c, ball, LengthBound::infinite(), strict)) {
          ok = ok && verify_shortcut(c, ball, s, LengthBound::infinite());
          ++shortcuts;
        }
      }
    }
  }
  if (!ok || shortcuts == 0) {
    failed.push_back("shortcut re-verification");
  }

  ok = true;
  std::size_t fillings = 0;
  for (auto name : {"z2", "bs12"}) {
    auto p = preset(name);
    auto o = make_oracle(p);
    for (auto const& w : reduced_words(2, 8)) {
      if (!o->is_identity(w)) {
        continue;
      }
      auto a = area(p, *o, w);
      ok = ok && a.status == SearchStatus::found && replay_filling(p, w, a.filling);
      ++fillings;
    }
  }
  if (!ok || fillings == 0) {
    failed.push_back("filling replay");
  }

  ok = true;
  std::size_t moved = 0;
  for (auto file : {"/s3.txt", "/d4.txt"}) {
    auto p = load_group(std::string(GCHORD_TEST_DATA) + file);
    auto ball = build_ball(make_oracle(p), 8);
    auto const& g = ball.group();
    for (Vertex a = 0; a < ball.size(); ++a) {
      for (Vertex b = 0; b < ball.size(); ++b) {
        if (a == b || distance(ball, a, b) < 2) {
          continue;
        }
        auto cut = min_vertex_cut(ball, a, b);
        for (Vertex t = 0; t < ball.size(); ++t) {
          auto move = [&](Vertex v) {
            return *ball.find(g.multiply(ball.element(t), ball.element(v)));
          };
          VertexSet image;
          for (Vertex v : cut.p) {
            image.push_back(move(v));
          }
          ok = ok && is_minimal_separator(ball, image, move(a), move(b));
          ++moved;
        }
      }
    }
  }
  if (!ok || moved == 0) {
    failed.push_back("separator translation invariance");
  }

  std::string detail = "free reduction, oracle homomorphism, cycle enumeration, " +
                       std::to_string(shortcuts) + " shortcuts, " + std::to_string(fillings) +
                       " fillings, " + std::to_string(moved) + " translated separators";
  if (!failed.empty()) {
    detail = "failed:";
    for (auto const& f : failed) {
      detail += " " + f + ";";
    }
  }
  return {failed.empty(), detail};
}

std::pair<int, std::string> run_cli(std::string const& args) {
  std::string cmd = std::string("'") + GCHORD_CLI + "' " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    return {-1, out};
  }
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
    out.append(buf, got);
  }
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome determinism() {
  std::vector<std::string> commands{
      "chordal --group bs12 -k 6 --lmax 10",
      "chordal --group bs13 -k 6 -m 4 --i0 4 --lmax 8",
      "chordal --group z2 -k 5 --eps 2 --lmax 8",
      "ball --group bs12 --radius 6",
      "delta --group z2 --radius 5",
      "delta --group z2 --radius 5 --method rips",
      "delta --group z2 --radius 6 --sample 20000",
      "family --group zxz4 --delta 2 --radius 6",
      "separator --group zxz4 --a '' --b bb --min-cut",
      "bp --group f2 --pairs all-opposite:3 --radius 6",
      "dehn --group z2 --n 8 --k 5",
      "area --preset bs12 --word bbaBBAAAA",
      "gamma-n --n 3 --N 2 --verify",
  };
  std::size_t same = 0;
  std::string differing;
  for (auto const& c : commands) {
    auto one = run_cli(c + " --jobs 1");
    auto many = run_cli(c + " --jobs 8");
    if (one.first > 2 || one.first < 0 || one != many) {
      differing += " [" + c + "]";
    } else {
      ++same;
    }
  }
  return {same == commands.size(), std::to_string(same) + "/" + std::to_string(commands.size()) +
                                       " commands byte-identical" + differing};
}

}  // namespace

int main() {
  std::vector<std::pair<char const*, std::function<Outcome()>>> criteria{
      {"Z2 is 5-chordal up to length 10", z2_five_chordal},
      {"BS(1,2) is 6-chordal up to length 10", g2_six_chordal},
      {"gamma_1 and gamma_2 in BS(1,3) have no shortcut", gamma_shortcut_free},
      {"BS(1,2) geodesics avoid three b-edges of one height", three_b_edges},
      {"BS(1,3) distance of b^k a b^-k' is k+k'+1", geodesic_lengths},
      {"separator diameters: Z x Z4 grows, F2 singletons", separator_contrast},
      {"bottleneck estimates", bp_trend},
      {"four-point hyperbolicity", hyperbolicity},
      {"Z2 Dehn function below c*2^(n-k)", dehn_bound},
      {"bounded word problem on Z2", word_problem},
      {"dense chordality implies the gap test", dense_implies_gap},
      {"property suites", property_suites},
      {"--jobs 1 and --jobs 8 certificates agree", determinism},
  };
  int failures = 0;
  for (std::size_t t = 0; t < criteria.size(); ++t) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[t].second();
    } catch (std::exception const& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (o.pass ? "PASS" : "FAIL") << " criterion " << t + 1 << ": "
         << criteria[t].first << " -- " << o.detail << " (" << secs << " s)";
    std::cout << line.str() << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
