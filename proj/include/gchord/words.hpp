#pragma once

// Words over a finite generating alphabet, free reduction, and the text
// formats for word literals and presentation files.
//
// Word literals use one ASCII letter per generator: the lowercase letter is
// the generator, the uppercase letter its inverse. Factors may carry an
// integer exponent, either on a single letter or on a parenthesized group:
//
//   abAB        a b a^-1 b^-1
//   a^3         a a a
//   (ab)^-2     B A B A

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "backend.hpp"
#include "error.hpp"

namespace gchord {

struct Letter {
  std::uint16_t generator = 0;
  std::int8_t sign = 1;

  // Dense code used for ordering and table lookups: a=0, A=1, b=2, B=3, ...
  constexpr std::size_t code() const noexcept {
    return 2 * static_cast<std::size_t>(generator) + (sign < 0 ? 1 : 0);
  }
  static constexpr Letter from_code(std::size_t code) noexcept {
    return {static_cast<std::uint16_t>(code / 2),
            static_cast<std::int8_t>(code % 2 == 0 ? 1 : -1)};
  }
  constexpr Letter inverse() const noexcept {
    return {generator, static_cast<std::int8_t>(-sign)};
  }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr std::strong_ordering operator<=>(Letter x,
                                                    Letter y) noexcept {
    return x.code() <=> y.code();
  }
};

constexpr bool cancels(Letter x, Letter y) noexcept {
  return x.generator == y.generator && x.sign == -y.sign;
}

struct Word {
  std::vector<Letter> letters;
  // Set by free_reduce; a hint only, never required for correctness.
  bool reduced = false;

  Word() = default;
  explicit Word(std::vector<Letter> ls, bool is_reduced = false)
      : letters(std::move(ls)), reduced(is_reduced) {}

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  Letter operator[](std::size_t i) const { return letters[i]; }

  friend bool operator==(Word const& x, Word const& y) {
    return x.letters == y.letters;
  }
  friend std::strong_ordering operator<=>(Word const& x, Word const& y) {
    return std::lexicographical_compare_three_way(
        x.letters.begin(), x.letters.end(), y.letters.begin(),
        y.letters.end());
  }
};

inline Word inverse(Word const& w) {
  Word out;
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    out.letters.push_back(it->inverse());
  }
  out.reduced = w.reduced;
  return out;
}

inline Word concat(Word const& x, Word const& y) {
  Word out;
  out.letters.reserve(x.size() + y.size());
  out.letters.insert(out.letters.end(), x.letters.begin(), x.letters.end());
  out.letters.insert(out.letters.end(), y.letters.begin(), y.letters.end());
  return out;
}

inline Word power(Word const& w, std::int64_t e) {
  Word base = e < 0 ? inverse(w) : w;
  Word out;
  for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) {
    out.letters.insert(out.letters.end(), base.letters.begin(),
                       base.letters.end());
  }
  return out;
}

// Contiguous subword w[first, first + count).
inline Word subword(Word const& w, std::size_t first, std::size_t count) {
  return Word(std::vector<Letter>(w.letters.begin() + first,
                                  w.letters.begin() + first + count));
}

// Cyclic rotation so that letter `shift` comes first.
inline Word rotate(Word const& w, std::size_t shift) {
  Word out = w;
  if (!w.empty()) {
    std::rotate(out.letters.begin(),
                out.letters.begin() + static_cast<std::ptrdiff_t>(shift % w.size()),
                out.letters.end());
  }
  return out;
}

inline bool is_freely_reduced(Word const& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (cancels(w[i - 1], w[i])) {
      return false;
    }
  }
  return true;
}

// Stack-based cancellation; a single left-to-right pass reaches the unique
// reduced form.
inline Word free_reduce(Word const& w) {
  Word out;
  out.letters.reserve(w.size());
  for (Letter x : w.letters) {
    if (!out.letters.empty() && cancels(out.letters.back(), x)) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(x);
    }
  }
  out.reduced = true;
  return out;
}

// Free reduction followed by stripping inverse letter pairs from the two
// ends. The result is a conjugate of w.
inline Word cyclic_reduce(Word const& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && cancels(r[lo], r[hi - 1])) {
    ++lo;
    --hi;
  }
  Word out(std::vector<Letter>(r.letters.begin() + static_cast<std::ptrdiff_t>(lo),
                               r.letters.begin() + static_cast<std::ptrdiff_t>(hi)),
           true);
  return out;
}

inline std::int64_t exponent_sum(Word const& w, std::size_t generator) {
  std::int64_t total = 0;
  for (Letter x : w.letters) {
    if (x.generator == generator) {
      total += x.sign;
    }
  }
  return total;
}

////////////////////////////////////////////////////////////////////////////
// Word literals
////////////////////////////////////////////////////////////////////////////

namespace detail {

class WordParser {
 public:
  WordParser(std::string_view text, std::span<char const> generators)
      : text_(text), generators_(generators) {}

  Word parse() {
    Word w = sequence();
    skip_space();
    if (pos_ != text_.size()) {
      fail(text_[pos_] == ')' ? "unbalanced ')'" : "unexpected character");
    }
    return w;
  }

 private:
  Word sequence() {
    Word out;
    while (true) {
      skip_space();
      if (pos_ == text_.size() || text_[pos_] == ')') {
        return out;
      }
      Word f = factor();
      out.letters.insert(out.letters.end(), f.letters.begin(),
                         f.letters.end());
    }
  }

  Word factor() {
    Word atom;
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      atom = sequence();
      skip_space();
      if (pos_ == text_.size() || text_[pos_] != ')') {
        fail("missing ')'");
      }
      ++pos_;
    } else if (std::isalpha(static_cast<unsigned char>(c)) != 0) {
      atom.letters.push_back(letter(c));
      ++pos_;
    } else {
      fail("unexpected character");
    }
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      return power(atom, exponent());
    }
    return atom;
  }

  std::int64_t exponent() {
    skip_space();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    std::int64_t value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000) {
        fail("exponent too large");
      }
      ++pos_;
    }
    if (pos_ == start) {
      fail("malformed exponent");
    }
    return negative ? -value : value;
  }

  Letter letter(char c) {
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto it = std::find(generators_.begin(), generators_.end(), lower);
    if (it == generators_.end()) {
      fail(std::string("unknown generator '") + lower + "'");
    }
    return {static_cast<std::uint16_t>(it - generators_.begin()),
            static_cast<std::int8_t>(
                std::islower(static_cast<unsigned char>(c)) != 0 ? 1 : -1)};
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
      ++pos_;
    }
  }

  [[noreturn]] void fail(std::string const& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) +
                     " in word '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::span<char const> generators_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Returns the (unreduced) word spelled by `text`.
inline Word parse_word(std::string_view text,
                       std::span<char const> generators) {
  return detail::WordParser(text, generators).parse();
}

inline std::string print_word(Word const& w, std::span<char const> generators) {
  std::string out;
  out.reserve(w.size());
  for (Letter x : w.letters) {
    char c = generators[x.generator];
    out.push_back(x.sign > 0 ? c
                             : static_cast<char>(std::toupper(
                                   static_cast<unsigned char>(c))));
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////
// Presentations
////////////////////////////////////////////////////////////////////////////

struct Presentation {
  std::string name = "unnamed";
  std::vector<char> generators;
  std::vector<Word> relators;
  BackendDescriptor backend;

  std::size_t generator_count() const noexcept { return generators.size(); }

  Word word(std::string_view text) const {
    return parse_word(text, generators);
  }
  std::string print(Word const& w) const { return print_word(w, generators); }

  std::size_t max_relator_length() const {
    std::size_t m = 0;
    for (auto const& r : relators) {
      m = std::max(m, r.size());
    }
    return m;
  }
};

// Canonical text form; parse_presentation(to_text(p)) reproduces p.
inline std::string to_text(Presentation const& p) {
  std::ostringstream os;
  os << "group " << p.name << "\n";
  os << "gens";
  for (char g : p.generators) {
    os << ' ' << g;
  }
  os << "\n";
  for (auto const& r : p.relators) {
    os << "rel " << p.print(r) << "\n";
  }
  os << "backend " << p.backend.to_string() << "\n";
  return os.str();
}

namespace detail {

inline std::vector<std::string> split_tokens(std::string const& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) {
    out.push_back(tok);
  }
  return out;
}

inline std::int64_t parse_int(std::string const& tok, std::size_t line_no) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(tok, &used);
    if (used == tok.size()) {
      return v;
    }
  } catch (std::logic_error const&) {
  }
  throw ParseError("line " + std::to_string(line_no) +
                   ": expected an integer, got '" + tok + "'");
}

}  // namespace detail

// Parses the line-based presentation format:
//
//   group <name>
//   gens <g1> <g2> ...
//   rel <word>               (relator)
//   rel <lhs> <rhs>          (relation lhs = rhs, also `rel lhs = rhs`)
//   backend <kind> [params]
//
// `#` starts a comment. Relative finite_table paths are resolved against
// `base_dir`. Whether the backend actually satisfies the relators is checked
// by the oracle, not here.
inline Presentation parse_presentation(std::string_view text,
                                       std::filesystem::path const& base_dir = {}) {
  Presentation p;
  bool have_gens = false;
  bool have_backend = false;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rel_lines;

  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    auto toks = detail::split_tokens(line);
    if (toks.empty()) {
      continue;
    }
    auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    std::string const& key = toks[0];
    if (key == "group") {
      if (toks.size() != 2) {
        throw ParseError(where() + "expected `group <name>`");
      }
      p.name = toks[1];
    } else if (key == "gens") {
      if (have_gens) {
        throw ParseError(where() + "duplicate `gens` line");
      }
      have_gens = true;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        auto const& g = toks[i];
        if (g.size() != 1 || std::islower(static_cast<unsigned char>(g[0])) == 0) {
          throw ParseError(where() + "generator names must be single lowercase "
                                     "ASCII letters, got '" + g + "'");
        }
        if (std::find(p.generators.begin(), p.generators.end(), g[0]) !=
            p.generators.end()) {
          throw ParseError(where() + "duplicate generator '" + g + "'");
        }
        p.generators.push_back(g[0]);
      }
    } else if (key == "rel") {
      rel_lines.emplace_back(line_no,
                             std::vector<std::string>(toks.begin() + 1, toks.end()));
    } else if (key == "backend") {
      if (toks.size() < 2) {
        throw ParseError(where() + "expected `backend <kind> [params]`");
      }
      have_backend = true;
      auto const& kind = toks[1];
      auto arity = [&](std::size_t n) {
        if (toks.size() != n + 2) {
          throw ParseError(where() + "backend " + kind + " takes " +
                           std::to_string(n) + " parameter(s)");
        }
      };
      if (kind == "free") {
        arity(0);
        p.backend = BackendDescriptor::free_group();
      } else if (kind == "abelian") {
        arity(1);
        p.backend = BackendDescriptor::abelian(
            static_cast<int>(detail::parse_int(toks[2], line_no)));
      } else if (kind == "product_cyclic") {
        arity(2);
        p.backend = BackendDescriptor::product_cyclic(
            static_cast<int>(detail::parse_int(toks[2], line_no)),
            detail::parse_int(toks[3], line_no));
      } else if (kind == "bs") {
        arity(2);
        if (detail::parse_int(toks[2], line_no) != 1) {
          throw ParseError(where() + "only BS(1, n) has a normal form backend");
        }
        p.backend = BackendDescriptor::bs(detail::parse_int(toks[3], line_no));
      } else if (kind == "finite_table") {
        arity(1);
        std::filesystem::path path(toks[2]);
        if (path.is_relative() && !base_dir.empty()) {
          path = base_dir / path;
        }
        p.backend = BackendDescriptor::finite_table(path.string());
      } else {
        throw ParseError(where() + "unknown backend '" + kind + "'");
      }
      try {
        p.backend.validate();
      } catch (Error const& e) {
        throw ParseError(where() + e.what());
      }
    } else {
      throw ParseError(where() + "unknown keyword '" + key + "'");
    }
  }
  if (!have_gens) {
    throw ParseError("missing `gens` line");
  }
  if (!have_backend) {
    throw ParseError("missing `backend` line");
  }
  for (auto const& [no, args] : rel_lines) {
    auto where = "line " + std::to_string(no) + ": ";
    Word r;
    try {
      if (args.size() == 1) {
        r = p.word(args[0]);
      } else if (args.size() == 2) {
        r = concat(p.word(args[0]), inverse(p.word(args[1])));
      } else if (args.size() == 3 && args[1] == "=") {
        r = concat(p.word(args[0]), inverse(p.word(args[2])));
      } else {
        throw ParseError("expected `rel <word>` or `rel <lhs> <rhs>`");
      }
    } catch (ParseError const& e) {
      throw ParseError(where + e.what());
    }
    r = free_reduce(r);
    if (r.empty()) {
      throw ParseError(where + "relator reduces to the empty word");
    }
    p.relators.push_back(std::move(r));
  }
  return p;
}

}  // namespace gchord
