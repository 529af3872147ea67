#include <random>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"

#include "gchord/presets.hpp"
#include "gchord/words.hpp"

using namespace gchord;

namespace {

std::vector<char> const kAB{'a', 'b'};

Word w(std::string const& text) { return parse_word(text, kAB); }
std::string s(Word const& x) { return print_word(x, kAB); }

// Free reduction by repeated scanning for an adjacent cancelling pair.
std::string naive_reduce(std::string text) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
      char x = text[i];
      char y = text[i + 1];
      if (x != y && std::tolower(x) == std::tolower(y)) {
        text.erase(i, 2);
        changed = true;
        break;
      }
    }
  }
  return text;
}

std::string random_text(std::mt19937_64& rng, std::size_t max_len) {
  static char const letters[] = {'a', 'A', 'b', 'B'};
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> pick(0, 3);
  std::string out(len(rng), 'a');
  for (auto& c : out) {
    c = letters[pick(rng)];
  }
  return out;
}

}  // namespace

TEST_CASE("parse and print words") {
  CHECK(s(w("aB")) == "aB");
  CHECK(s(w("a^3")) == "aaa");
  CHECK(s(w("a^-2b")) == "AAb");
  CHECK(s(w("(ab)^2")) == "abab");
  CHECK(s(w("(aB)^-1")) == "bA");
  CHECK(s(w(" a b ")) == "ab");
  CHECK(w("").empty());
  CHECK(s(w("a^0b")) == "b");
}

TEST_CASE("word parse errors") {
  CHECK_THROWS_AS(w("c"), ParseError);
  CHECK_THROWS_AS(w("(ab"), ParseError);
  CHECK_THROWS_AS(w("ab)"), ParseError);
  CHECK_THROWS_AS(w("a^"), ParseError);
  CHECK_THROWS_AS(w("a^x"), ParseError);
  CHECK_THROWS_AS(w("a1"), ParseError);
  CHECK_THROWS_AS(w("a^99999999"), ParseError);
}

TEST_CASE("letters and codes") {
  for (std::size_t c = 0; c < 6; ++c) {
    CHECK(Letter::from_code(c).code() == c);
    CHECK(Letter::from_code(c).inverse().inverse() == Letter::from_code(c));
    CHECK(cancels(Letter::from_code(c), Letter::from_code(c).inverse()));
  }
  CHECK(Letter{0, 1}.code() == 0);
  CHECK(Letter{0, -1}.code() == 1);
  CHECK(Letter{1, 1}.code() == 2);
  CHECK(Letter{1, -1}.code() == 3);
}

TEST_CASE("free reduction agrees with the scanning oracle and is idempotent") {
  std::mt19937_64 rng(20240611);
  for (int t = 0; t < 2000; ++t) {
    auto text = random_text(rng, 16);
    Word x = w(text);
    Word r = free_reduce(x);
    CHECK(s(r) == naive_reduce(text));
    CHECK(is_freely_reduced(r));
    CHECK(free_reduce(r) == r);
    CHECK(free_reduce(concat(x, inverse(x))).empty());
    CHECK(inverse(inverse(x)) == x);
  }
}

TEST_CASE("word operations") {
  CHECK(s(inverse(w("abB"))) == "bBA");
  CHECK(s(power(w("ab"), 3)) == "ababab");
  CHECK(s(power(w("ab"), -2)) == "BABA");
  CHECK(power(w("ab"), 0).empty());
  CHECK(s(subword(w("abAB"), 1, 2)) == "bA");
  CHECK(s(rotate(w("abAB"), 1)) == "bABa");
  CHECK(s(rotate(w("abAB"), 4)) == "abAB");
  CHECK(exponent_sum(w("aabAb"), 0) == 1);
  CHECK(exponent_sum(w("aabAb"), 1) == 2);
  CHECK(s(cyclic_reduce(w("bAabaB"))) == "ba");
  CHECK(s(cyclic_reduce(w("baB"))) == "a");
  CHECK(s(cyclic_reduce(w("abAB"))) == "abAB");
  CHECK(w("a") < w("A"));
  CHECK(w("ab") < w("b"));
}

TEST_CASE("cyclic reduction yields a cyclically reduced conjugate") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    Word x = free_reduce(w(random_text(rng, 12)));
    Word c = cyclic_reduce(x);
    CHECK(is_freely_reduced(c));
    if (c.size() >= 2) {
      CHECK_FALSE(cancels(c.letters.front(), c.letters.back()));
    }
    CHECK(c.size() <= x.size());
    CHECK((x.size() - c.size()) % 2 == 0);
  }
}

TEST_CASE("presentation text round trip") {
  for (auto name : {"f2", "z2", "z3", "zxz4", "bs12", "bs13", "bs1n:5", "bs1n:-2"}) {
    auto p = preset(name);
    auto q = parse_presentation(to_text(p));
    CHECK(to_text(q) == to_text(p));
    CHECK(q.relators == p.relators);
    CHECK(q.backend.to_string() == p.backend.to_string());
  }
  auto bs = preset("bs12");
  CHECK(bs.print(bs.relators.at(0)) == "baBAA");
  CHECK(bs.backend.to_string() == "bs 1 2");
  CHECK(preset("bs1n:3").print(preset("bs1n:3").relators.at(0)) == "baBAAA");
}

TEST_CASE("presentation relations and comments") {
  auto p = parse_presentation(
      "# a comment\n"
      "group g\n"
      "gens a b   # two generators\n"
      "rel bab^-1 = a^2\n"
      "rel ab ba\n"
      "backend bs 1 2\n");
  REQUIRE(p.relators.size() == 2);
  CHECK(p.print(p.relators[0]) == "baBAA");
  CHECK(p.print(p.relators[1]) == "abAB");
  CHECK(p.max_relator_length() == 5);
}

TEST_CASE("presentation errors") {
  CHECK_THROWS_AS(parse_presentation("group g\nbackend free\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("group g\ngens a b\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a b\nbackend nonsense\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a B\nbackend free\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a a\nbackend free\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a b\nrel aA\nbackend free\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a b\nrel ac\nbackend free\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a b\nbackend bs 2 3\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a b\nbackend abelian\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a b\nbackend abelian x\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a b\nfrobnicate\nbackend free\n"), ParseError);
  CHECK_THROWS_AS(preset("bs1n:0"), ParseError);
  CHECK_THROWS_AS(preset("bs1n:x"), ParseError);
  CHECK_THROWS(preset("nosuch"));
}
