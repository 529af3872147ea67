#include <array>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"

#include "gchord/chordality.hpp"
#include "gchord/presets.hpp"

using namespace gchord;

namespace {

CayleyBall ball_of(char const* name, int radius) {
  return build_ball(make_oracle(preset(name)), radius);
}

std::set<std::string> cycle_words(Presentation const& p, std::vector<Cycle> const& cycles) {
  std::set<std::string> out;
  for (auto const& c : cycles) {
    out.insert(p.print(c.word));
  }
  return out;
}

// Every word of length 3..lmax whose closed path is simple, one per
// reversal pair, found by brute force over all 4^L words.
template <class Step>
std::set<std::string> brute_force_cycles(Presentation const& p, int lmax, Step step) {
  std::set<std::string> out;
  std::size_t letters = 2 * p.generator_count();
  std::function<void(Word&, std::vector<std::array<std::int64_t, 2>>&)> grow;
  grow = [&](Word& w, std::vector<std::array<std::int64_t, 2>>& pts) {
    if (w.size() >= 3 && pts.back() == pts.front()) {
      if (w < inverse(w)) {
        out.insert(p.print(w));
      }
      return;
    }
    if (static_cast<int>(w.size()) == lmax) {
      return;
    }
    for (std::size_t c = 0; c < letters; ++c) {
      auto next = step(pts.back(), Letter::from_code(c));
      bool closes = next == pts.front();
      bool repeat = std::find(pts.begin() + 1, pts.end(), next) != pts.end();
      if (repeat || (closes && w.size() + 1 < 3)) {
        continue;
      }
      w.letters.push_back(Letter::from_code(c));
      pts.push_back(next);
      grow(w, pts);
      pts.pop_back();
      w.letters.pop_back();
    }
  };
  Word w;
  std::vector<std::array<std::int64_t, 2>> pts{{0, 0}};
  grow(w, pts);
  return out;
}

std::array<std::int64_t, 2> z2_step(std::array<std::int64_t, 2> x, Letter s) {
  x[s.generator] += s.sign;
  return x;
}

std::array<std::int64_t, 2> zxz4_step(std::array<std::int64_t, 2> x, Letter s) {
  x[s.generator] += s.sign;
  x[1] = ((x[1] % 4) + 4) % 4;
  return x;
}

}  // namespace

TEST_CASE("radius rules") {
  CHECK(required_radius(10, LengthBound::infinite()) == 10);
  CHECK(required_radius(10, 3) == 8);
  CHECK(required_radius(5, LengthBound::infinite()) == 6);
  CHECK(required_radius(12, 4) == 10);
  CHECK(ceil_half(7) == 4);
  CHECK(parse_length_bound("inf").is_infinite());
  CHECK(parse_length_bound("3").value() == 3);
  CHECK_THROWS_AS(parse_length_bound("0"), ParseError);
  CHECK_THROWS_AS(parse_length_bound("x"), ParseError);
}

TEST_CASE("shortcut bounds and gaps") {
  // d_gamma - 1 with m infinite
  CHECK(shortcut_bound(8, 1, 4, LengthBound::infinite()) == 3);
  CHECK(shortcut_bound(8, 1, 4, 2) == 2);
  CHECK(shortcut_bound(8, 1, 5, LengthBound::infinite()) == 2);
  CHECK(shortcut_bound(8, 2, 3, LengthBound::infinite()) == 1);
  CHECK(shortcut_bound(4, 1, 2, LengthBound::infinite()) == 1);
  CHECK(cycle_distance(8, 1, 4) == 4);
  CHECK(cycle_distance(8, 1, 5) == 3);
  CHECK(cycle_distance(8, 1, 7) == 1);
  CHECK(max_cyclic_gap(6, {}) == 7);
  CHECK(max_cyclic_gap(6, {0}) == 6);
  CHECK(max_cyclic_gap(6, {0, 2}) == 4);
  CHECK(max_cyclic_gap(6, {0, 2, 4}) == 2);
  CHECK(max_cyclic_gap(6, {1, 5}) == 4);
}

TEST_CASE("simple relations") {
  auto p = preset("z2");
  auto o = make_oracle(p);
  CHECK(is_simple_relation(*o, p.word("abAB")));
  CHECK(is_simple_relation(*o, p.word("aabAAB")));
  CHECK_FALSE(is_simple_relation(*o, p.word("abABabAB")));
  CHECK(is_simple_relation(*o, p.word("aA")));
  CHECK_FALSE(is_simple_relation(*o, p.word("aabb")));
  CHECK_FALSE(is_simple_relation(*o, p.word("abAAbAB")));
  auto ball = build_ball(o, 4);
  CHECK_THROWS(make_cycle(ball, p.word("aabb")));
  CHECK_THROWS(make_cycle(ball, p.word("abABabAB")));
  CHECK_THROWS_AS(make_cycle(ball, p.word("a^5b^5A^5B^5")), RadiusError);
  auto c = make_cycle(ball, p.word("abAB"));
  CHECK(c.vertices.size() == 5);
  CHECK(c.vertices.front() == 0);
  CHECK(c.vertices.back() == 0);
}

TEST_CASE("cycle enumeration matches brute force") {
  for (int lmax = 3; lmax <= 6; ++lmax) {
    auto p = preset("z2");
    auto ball = build_ball(make_oracle(p), lmax);
    CHECK(cycle_words(p, enumerate_simple_cycles(ball, lmax, 2)) ==
          brute_force_cycles(p, lmax, z2_step));

    auto q = preset("zxz4");
    auto qb = build_ball(make_oracle(q), lmax);
    CHECK(cycle_words(q, enumerate_simple_cycles(qb, lmax, 2)) ==
          brute_force_cycles(q, lmax, zxz4_step));

    CHECK(enumerate_simple_cycles(ball_of("f2", lmax), lmax, 2).empty());
  }
  auto p = preset("z2");
  auto ball = build_ball(make_oracle(p), 10);
  CHECK(enumerate_simple_cycles(ball, 4, 1).size() == 4);
  CHECK(enumerate_simple_cycles(ball, 10, 1).size() == 352);
}

TEST_CASE("cycle enumeration does not depend on the job count") {
  auto ball = ball_of("bs12", 8);
  auto one = enumerate_simple_cycles(ball, 8, 1);
  auto many = enumerate_simple_cycles(ball, 8, 5);
  REQUIRE(one.size() == many.size());
  for (std::size_t t = 0; t < one.size(); ++t) {
    CHECK(one[t].word == many[t].word);
  }
}

TEST_CASE("enumerated cycles are simple relations") {
  auto ball = ball_of("bs12", 8);
  for (auto const& c : enumerate_simple_cycles(ball, 8, 2)) {
    CHECK(is_simple_relation(ball.group(), c.word));
    CHECK(c.word < inverse(c.word));
    CHECK(make_cycle(ball, c.word).vertices == c.vertices);
  }
}

TEST_CASE("every found shortcut re-verifies") {
  for (auto name : {"z2", "bs12", "zxz4"}) {
    auto ball = ball_of(name, 8);
    auto cycles = enumerate_simple_cycles(ball, 8, 2);
    std::size_t count = 0;
    for (auto const& c : cycles) {
      if (max_dist0(ball, c) + ceil_half(static_cast<int>(c.length())) > ball.radius()) {
        continue;
      }
      for (bool strict : {false, true}) {
        for (LengthBound m : {LengthBound::infinite(), LengthBound(2)}) {
          for (auto const& s : find_shortcuts(c, ball, m, strict)) {
            CHECK(verify_shortcut(c, ball, s, m));
            CHECK(s.path.size() < cycle_distance(c.length(), s.i, s.j));
            if (strict) {
              CHECK(s.strict);
            }
            ++count;
          }
        }
      }
    }
    CHECK(count > 0);
  }
}

TEST_CASE("shortcut lists are exhaustive on small cycles") {
  // every pair not reported really has no short path
  auto p = preset("z2");
  auto ball = build_ball(make_oracle(p), 8);
  auto c = make_cycle(ball, p.word("aabbAABB"));
  auto cuts = find_shortcuts(c, ball, LengthBound::infinite(), false);
  std::set<std::pair<std::size_t, std::size_t>> found;
  for (auto const& s : cuts) {
    found.insert({s.i, s.j});
  }
  for (std::size_t j = 2; j <= 8; ++j) {
    for (std::size_t i = 1; i < j; ++i) {
      int d = distance(ball, c.vertices[i - 1], c.vertices[j]);
      int bound = shortcut_bound(8, i, j, LengthBound::infinite());
      bool expect = bound >= 1 && d <= bound;
      INFO("i = " << i << ", j = " << j << ", d = " << d);
      CHECK(found.count({i, j}) == (expect ? 1u : 0u));
    }
  }
  CHECK(find_shortcuts(make_cycle(ball, p.word("abAB")), ball, LengthBound::infinite(), false)
            .empty());
}

TEST_CASE("Z2 chordality at small scale") {
  auto ball = ball_of("z2", 10);
  auto r = check_km_chordal(ball, 5, LengthBound::infinite(), 10, 2);
  CHECK(r.status == ChordalStatus::verified_up_to_bound);
  CHECK(r.cycles_enumerated == 352);
  CHECK(r.cycles_checked == 348);
  auto sq = check_km_chordal(ball_of("z2", 4), 4, LengthBound::infinite(), 4, 1);
  CHECK(sq.status == ChordalStatus::counterexample);
  REQUIRE(sq.witness);
  CHECK(preset("z2").print(sq.witness->word) == "abAB");
  CHECK_THROWS_AS(check_km_chordal(ball_of("z2", 4), 5, LengthBound::infinite(), 10, 1),
                  RadiusError);
}

TEST_CASE("BS(1,2) chordality up to length 8") {
  auto r = check_km_chordal(ball_of("bs12", 8), 6, LengthBound::infinite(), 8, 2);
  CHECK(r.status == ChordalStatus::verified_up_to_bound);
  CHECK(r.cycles_checked > 0);
  auto five = check_km_chordal(ball_of("bs12", 6), 5, LengthBound::infinite(), 5, 1);
  CHECK(five.status == ChordalStatus::counterexample);
  CHECK(five.witness->length() == 5);
}

TEST_CASE("dense chordality implies the gap test cycle by cycle") {
  for (auto name : {"z2", "bs12"}) {
    auto ball = ball_of(name, 8);
    for (int eps : {1, 2, 3}) {
      auto dense = check_densely_chordal(ball, eps, 4, 3, 8, 2);
      auto gaps = check_ikm_chordal(ball, 2 * eps, 4, 3, 8, 2);
      REQUIRE(dense.verdicts.size() == gaps.verdicts.size());
      for (std::size_t t = 0; t < dense.verdicts.size(); ++t) {
        if (dense.verdicts[t].passes) {
          CHECK(gaps.verdicts[t].passes);
        }
        CHECK(gaps.verdicts[t].max_gap <= dense.verdicts[t].max_gap);
      }
    }
  }
}

TEST_CASE("ikm gap test is rotation invariant") {
  auto p = preset("z2");
  auto ball = build_ball(make_oracle(p), 10);
  Word w = p.word("aaabbAAABB");
  for (std::size_t r = 0; r < w.size(); ++r) {
    auto c = make_cycle(ball, rotate(w, r));
    auto v = judge_cycle(c, ball, ChordalMode::ikm, LengthBound::infinite(), 3);
    CHECK(v.max_gap == judge_cycle(make_cycle(ball, w), ball, ChordalMode::ikm,
                                   LengthBound::infinite(), 3)
                           .max_gap);
  }
}

TEST_CASE("gamma_N cycles") {
  auto p = preset("bs13");
  CHECK(p.print(bs_gamma_word(1)) == "abaBAbAB");
  CHECK(p.print(bs_gamma_word(2)) == "abbaBBAbbABB");
  CHECK(bs_gamma_radius(1) == 8);
  CHECK(bs_gamma_radius(2) == 12);
  auto ball = build_ball(make_oracle(p), 8);
  auto g1 = bs_gamma_N(ball, 1);
  CHECK(max_dist0(ball, g1) == 4);
  auto cuts = find_shortcuts(g1, ball, LengthBound::infinite(), false);
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].i == 2);
  CHECK(cuts[0].j == 5);
  CHECK(p.print(cuts[0].path) == "aa");
  CHECK_THROWS(bs_gamma_N(ball_of("z2", 8), 1));
  CHECK_THROWS_AS(find_shortcuts(g1, build_ball(make_oracle(p), 6), LengthBound::infinite(),
                                 false),
                  RadiusError);
  // gamma_1 also closes in BS(1,2), where it has shortcuts
  auto b2 = build_ball(make_oracle(preset("bs12")), 8);
  CHECK_FALSE(find_shortcuts(bs_gamma_N(b2, 1), b2, LengthBound::infinite(), false).empty());
}

TEST_CASE("hyperbolicity constants") {
  CHECK(chordal_delta_bound(1, 5, 1) == Rational(2));
  CHECK(chordal_delta_bound(1, 12, 1) == Rational(3));
  CHECK(chordal_delta_bound(2, 5, 3) == Rational(5));
  CHECK(delta_to_chordal(Rational(1)) == std::pair{Rational(6), Rational(7)});
  CHECK(delta_to_chordal(Rational(1, 2)) == std::pair{Rational(4), Rational(5)});
}
