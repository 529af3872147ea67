#pragma once

// Van Kampen area by breadth-first search over cyclic words, Dehn function
// profiles, the doubling isoperimetric bound, and the bounded word-problem
// procedure it makes complete.
//
// The search works on cyclically reduced words up to rotation (areas of
// conjugates coincide). A move inserts a cyclic permutation of a relator or
// its inverse at a cyclic position where at least one letter cancels, then
// cyclically reduces. Each move costs one cell. For a trivial word w of
// area A there is a minimal filling whose intermediate words never exceed
// |w| + (A - 1) * max(0, maxRelatorLength - 2) letters, which is how found
// areas are certified exact even when the length cap prunes states.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cayley.hpp"
#include "chordality.hpp"
#include "error.hpp"
#include "groups.hpp"
#include "parallel.hpp"
#include "words.hpp"

namespace gchord {

////////////////////////////////////////////////////////////////////////////
// Isoperimetric bound
////////////////////////////////////////////////////////////////////////////

// c for n <= k, c * 2^(n - k) beyond.
inline std::uint64_t isoperimetric_bound(std::uint64_t c, int k, int n) {
  if (k < 1 || n < 1) {
    throw Error("isoperimetric bound needs k, n >= 1");
  }
  std::uint64_t f = c;
  for (int t = k; t < n; ++t) {
    if (f > std::numeric_limits<std::uint64_t>::max() / 2) {
      throw CapExceeded("isoperimetric bound overflows 64 bits");
    }
    f *= 2;
  }
  return f;
}

////////////////////////////////////////////////////////////////////////////
// Cyclic words as code strings
////////////////////////////////////////////////////////////////////////////

namespace detail {

using Codes = std::string;

inline Codes to_codes(Word const& w) {
  Codes s;
  s.reserve(w.size());
  for (Letter x : w.letters) {
    s.push_back(static_cast<char>(x.code()));
  }
  return s;
}

inline Word from_codes(Codes const& s) {
  Word w;
  for (char c : s) {
    w.letters.push_back(Letter::from_code(static_cast<unsigned char>(c)));
  }
  return w;
}

inline bool code_cancels(char x, char y) { return (x ^ 1) == y; }

inline Codes cyclic_reduce_codes(Codes const& s) {
  Codes r;
  r.reserve(s.size());
  for (char c : s) {
    if (!r.empty() && code_cancels(r.back(), c)) {
      r.pop_back();
    } else {
      r.push_back(c);
    }
  }
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && code_cancels(r[lo], r[hi - 1])) {
    ++lo;
    --hi;
  }
  return r.substr(lo, hi - lo);
}

// Lexicographically least rotation.
inline Codes canonical_rotation(Codes const& s) {
  std::size_t n = s.size();
  if (n < 2) {
    return s;
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t t = 0; t < n; ++t) {
      char x = s[(r + t) % n];
      char y = s[(best + t) % n];
      if (x != y) {
        if (x < y) {
          best = r;
        }
        break;
      }
    }
  }
  return s.substr(best) + s.substr(0, best);
}

inline Codes cyclic_canonical(Codes const& s) {
  return canonical_rotation(cyclic_reduce_codes(s));
}

inline Codes invert_codes(Codes const& s) {
  Codes r(s.rbegin(), s.rend());
  for (char& c : r) {
    c = static_cast<char>(c ^ 1);
  }
  return r;
}

}  // namespace detail

// A relator variant: rotation `shift` of the cyclically reduced relator,
// inverted first when sign is -1.
struct RelatorVariant {
  std::string codes;
  std::size_t relator = 0;
  std::size_t shift = 0;
  int sign = 1;
};

inline std::vector<RelatorVariant> relator_variants(Presentation const& pres) {
  std::vector<RelatorVariant> out;
  std::vector<std::string> seen;
  for (std::size_t r = 0; r < pres.relators.size(); ++r) {
    auto base = detail::to_codes(cyclic_reduce(pres.relators[r]));
    for (int sign : {1, -1}) {
      auto oriented = sign > 0 ? base : detail::invert_codes(base);
      for (std::size_t s = 0; s < oriented.size(); ++s) {
        auto v = oriented.substr(s) + oriented.substr(0, s);
        if (std::find(seen.begin(), seen.end(), v) != seen.end()) {
          continue;
        }
        seen.push_back(v);
        out.push_back({v, r, s, sign});
      }
    }
  }
  return out;
}

struct FillingMove {
  // insertion point in the current canonical cyclic word
  std::size_t position = 0;
  std::size_t relator = 0;
  std::size_t shift = 0;
  int sign = 1;
};

namespace detail {

inline std::string variant_codes(Presentation const& pres, FillingMove const& m) {
  auto base = to_codes(cyclic_reduce(pres.relators.at(m.relator)));
  if (m.sign < 0) {
    base = invert_codes(base);
  }
  if (m.shift >= base.size()) {
    throw Error("filling move shift out of range");
  }
  return base.substr(m.shift) + base.substr(0, m.shift);
}

// The cyclic word after inserting v before position pos of s.
inline Codes apply_insertion(Codes const& s, std::size_t pos, Codes const& v) {
  Codes t = v;
  t.append(s, pos, std::string::npos);
  t.append(s, 0, pos);
  return cyclic_canonical(t);
}

}  // namespace detail

enum class SearchStatus { found, exhausted, resource_exceeded };

inline std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found:
      return "found";
    case SearchStatus::exhausted:
      return "exhausted";
    case SearchStatus::resource_exceeded:
      return "resource_exceeded";
  }
  return {};
}

struct AreaCaps {
  // default: |w| + area_cap * maxRelatorLength + len_slack
  std::optional<std::size_t> len_cap;
  int area_cap = 32;
  int len_slack = 4;
  std::size_t state_cap = 2'000'000;

  std::size_t len_cap_for(std::size_t word_length, std::size_t max_relator) const {
    return len_cap.value_or(word_length +
                            static_cast<std::size_t>(area_cap) * max_relator +
                            static_cast<std::size_t>(len_slack));
  }
};

struct AreaResult {
  Word word;
  SearchStatus status = SearchStatus::exhausted;
  // set when status == found
  std::optional<int> area;
  // every filling has at least this many cells (within the caps when the
  // search was pruned)
  int lower_bound = 0;
  bool exact = false;
  std::vector<FillingMove> filling;
  std::size_t len_cap = 0;
  int area_cap = 0;
  std::size_t state_cap = 0;
  std::size_t states = 0;
  bool len_pruned = false;
};

// Breadth-first filling search. Does not consult any oracle; an exhausted
// search only says "no filling within the caps".
inline AreaResult search_filling(Presentation const& pres, Word const& w,
                                 AreaCaps const& caps) {
  AreaResult res;
  res.word = w;
  res.area_cap = caps.area_cap;
  res.state_cap = caps.state_cap;
  auto variants = relator_variants(pres);
  std::size_t max_rel = pres.max_relator_length();
  auto start = detail::cyclic_canonical(detail::to_codes(w));
  res.len_cap = caps.len_cap_for(start.size(), max_rel);

  struct Node {
    detail::Codes word;
    std::int64_t parent;
    FillingMove move;
  };
  std::vector<Node> nodes{{start, -1, {}}};
  std::unordered_map<detail::Codes, std::int64_t> index{{start, 0}};
  std::int64_t goal = start.empty() ? 0 : -1;
  std::size_t level_begin = 0;
  int depth = 0;
  bool pruned_early = false;
  while (goal < 0 && depth < caps.area_cap && level_begin < nodes.size()) {
    std::size_t level_end = nodes.size();
    for (std::size_t id = level_begin; id < level_end && goal < 0; ++id) {
      detail::Codes const s = nodes[id].word;
      std::size_t len = s.size();
      for (std::size_t pos = 0; pos < len && goal < 0; ++pos) {
        char left = s[(pos + len - 1) % len];
        char right = s[pos];
        for (auto const& v : variants) {
          if (!detail::code_cancels(left, v.codes.front()) &&
              !detail::code_cancels(v.codes.back(), right)) {
            continue;
          }
          auto t = detail::apply_insertion(s, pos, v.codes);
          if (t.size() > res.len_cap) {
            pruned_early = true;
            continue;
          }
          if (index.count(t) != 0) {
            continue;
          }
          if (nodes.size() >= caps.state_cap) {
            res.status = SearchStatus::resource_exceeded;
            res.states = nodes.size();
            res.lower_bound = depth + 1;
            res.len_pruned = pruned_early;
            return res;
          }
          index.emplace(t, static_cast<std::int64_t>(nodes.size()));
          nodes.push_back({t, static_cast<std::int64_t>(id),
                           {pos, v.relator, v.shift, v.sign}});
          if (t.empty()) {
            goal = static_cast<std::int64_t>(nodes.size() - 1);
            break;
          }
        }
      }
    }
    level_begin = level_end;
    ++depth;
  }
  res.states = nodes.size();
  res.len_pruned = pruned_early;
  if (goal < 0) {
    res.status = SearchStatus::exhausted;
    res.lower_bound = depth + 1;
    if (level_begin >= nodes.size()) {
      // frontier emptied before the area cap: nothing more within lenCap
      res.lower_bound = caps.area_cap + 1;
    }
    return res;
  }
  res.status = SearchStatus::found;
  for (std::int64_t id = goal; nodes[static_cast<std::size_t>(id)].parent >= 0;
       id = nodes[static_cast<std::size_t>(id)].parent) {
    res.filling.push_back(nodes[static_cast<std::size_t>(id)].move);
  }
  std::reverse(res.filling.begin(), res.filling.end());
  int a = static_cast<int>(res.filling.size());
  res.area = a;
  res.lower_bound = a;
  std::size_t needed = start.size() + static_cast<std::size_t>(std::max(0, a - 1)) *
                                          (max_rel > 2 ? max_rel - 2 : 0);
  res.exact = !pruned_early || res.len_cap >= needed;
  return res;
}

// Re-applies a filling from the word; true iff it ends at the empty word
// after exactly filling.size() moves, each inserting at a valid position.
inline bool replay_filling(Presentation const& pres, Word const& w,
                           std::vector<FillingMove> const& filling) {
  auto s = detail::cyclic_canonical(detail::to_codes(w));
  for (auto const& m : filling) {
    if (s.empty() || m.position >= s.size() || m.relator >= pres.relators.size()) {
      return false;
    }
    s = detail::apply_insertion(s, m.position, detail::variant_codes(pres, m));
  }
  return s.empty();
}

// Area of a word that the oracle confirms to be trivial.
inline AreaResult area(Presentation const& pres, GroupOracle const& oracle, Word const& w,
                       AreaCaps const& caps = {}) {
  if (pres.relators.empty() && !free_reduce(w).empty()) {
    throw Error("presentation has no relators");
  }
  if (!oracle.is_identity(w)) {
    throw Error("word " + pres.print(w) + " is not trivial in the group");
  }
  return search_filling(pres, free_reduce(w), caps);
}

////////////////////////////////////////////////////////////////////////////
// Dehn function
////////////////////////////////////////////////////////////////////////////

struct DehnValue {
  int n = 0;
  int value = 0;
  bool exact = true;
  std::vector<Word> witnesses;
};

struct DehnProfile {
  std::vector<DehnValue> values;  // values[t] is Dehn(t + 1)
  std::size_t words_enumerated = 0;
  std::size_t trivial_words = 0;
  std::size_t classes = 0;
  AreaCaps caps;

  DehnValue const& at(int n) const { return values.at(static_cast<std::size_t>(n - 1)); }
};

inline constexpr std::size_t kMaxDehnWitnesses = 8;

// All freely reduced words of length 1..n in shortlex order.
inline std::vector<Word> reduced_words(std::size_t generators, int n) {
  std::vector<Word> out;
  std::vector<Word> layer{Word{}};
  for (int len = 1; len <= n; ++len) {
    std::vector<Word> next;
    for (auto const& w : layer) {
      for (std::size_t c = 0; c < 2 * generators; ++c) {
        Letter s = Letter::from_code(c);
        if (!w.empty() && cancels(w.letters.back(), s)) {
          continue;
        }
        Word x = w;
        x.letters.push_back(s);
        next.push_back(std::move(x));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline DehnProfile dehn_profile(Presentation const& pres, GroupOracle const& oracle,
                                int nmax, AreaCaps const& caps = {}, unsigned jobs = 1) {
  if (nmax < 1) {
    throw Error("n must be >= 1");
  }
  DehnProfile prof;
  prof.caps = caps;
  auto words = reduced_words(pres.generator_count(), nmax);
  prof.words_enumerated = words.size();
  std::vector<char> trivial(words.size(), 0);
  parallel_for(words.size(), jobs, [&](std::size_t t) {
    trivial[t] = oracle.is_identity(words[t]) ? 1 : 0;
  });
  std::vector<Word> hits;
  std::vector<std::size_t> class_of;
  std::vector<std::string> class_keys;
  std::unordered_map<std::string, std::size_t> class_index;
  for (std::size_t t = 0; t < words.size(); ++t) {
    if (!trivial[t]) {
      continue;
    }
    auto key = detail::cyclic_canonical(detail::to_codes(words[t]));
    auto [it, fresh] = class_index.emplace(key, class_keys.size());
    if (fresh) {
      class_keys.push_back(key);
    }
    hits.push_back(words[t]);
    class_of.push_back(it->second);
  }
  prof.trivial_words = hits.size();
  prof.classes = class_keys.size();
  if (!hits.empty() && pres.relators.empty()) {
    throw Error("nonempty trivial words but no relators");
  }
  std::vector<AreaResult> areas(class_keys.size());
  parallel_for(class_keys.size(), jobs, [&](std::size_t t) {
    areas[t] = search_filling(pres, detail::from_codes(class_keys[t]), caps);
  });
  prof.values.resize(static_cast<std::size_t>(nmax));
  for (int n = 1; n <= nmax; ++n) {
    auto& dv = prof.values[static_cast<std::size_t>(n - 1)];
    dv.n = n;
    for (std::size_t t = 0; t < hits.size(); ++t) {
      if (static_cast<int>(hits[t].size()) > n) {
        continue;
      }
      auto const& a = areas[class_of[t]];
      int value = a.area.value_or(a.lower_bound);
      if (a.status != SearchStatus::found || !a.exact) {
        dv.exact = false;
      }
      if (value > dv.value) {
        dv.value = value;
        dv.witnesses.clear();
      }
      if (value == dv.value && value > 0 && dv.witnesses.size() < kMaxDehnWitnesses) {
        dv.witnesses.push_back(hits[t]);
      }
    }
  }
  return prof;
}

inline DehnValue dehn_function(Presentation const& pres, GroupOracle const& oracle, int n,
                               AreaCaps const& caps = {}, unsigned jobs = 1) {
  return dehn_profile(pres, oracle, n, caps, jobs).at(n);
}

struct DehnBoundRow {
  int n = 0;
  int dehn = 0;
  std::uint64_t bound = 0;
  std::int64_t margin = 0;
  bool holds = false;
  bool exact = false;
};

enum class DehnBoundStatus { holds, violated, inexact };

inline std::string to_string(DehnBoundStatus s) {
  switch (s) {
    case DehnBoundStatus::holds:
      return "holds";
    case DehnBoundStatus::violated:
      return "violated";
    case DehnBoundStatus::inexact:
      return "inexact";
  }
  return {};
}

struct DehnBoundReport {
  int k = 0;
  int nmax = 0;
  int c = 0;
  bool c_exact = false;
  std::vector<DehnBoundRow> rows;
  DehnBoundStatus status = DehnBoundStatus::holds;
  DehnProfile profile;
};

// c = Dehn(k), then Dehn(n) <= c * 2^(n - k) for k < n <= nmax. Inexact
// values are reported but never counted as holding.
inline DehnBoundReport check_dehn_bound(Presentation const& pres, GroupOracle const& oracle,
                                        int k, int nmax, AreaCaps const& caps = {},
                                        unsigned jobs = 1) {
  if (k < 1 || nmax < k) {
    throw Error("need 1 <= k <= nmax");
  }
  DehnBoundReport rep;
  rep.k = k;
  rep.nmax = nmax;
  rep.profile = dehn_profile(pres, oracle, nmax, caps, jobs);
  auto const& ck = rep.profile.at(k);
  rep.c = ck.value;
  rep.c_exact = ck.exact;
  bool all_exact = ck.exact;
  bool violated = false;
  for (int n = k + 1; n <= nmax; ++n) {
    auto const& dv = rep.profile.at(n);
    DehnBoundRow row;
    row.n = n;
    row.dehn = dv.value;
    row.exact = dv.exact;
    row.bound = isoperimetric_bound(static_cast<std::uint64_t>(rep.c), k, n);
    row.margin = static_cast<std::int64_t>(row.bound) - dv.value;
    row.holds = dv.exact && row.margin >= 0;
    all_exact = all_exact && dv.exact;
    violated = violated || (dv.exact && row.margin < 0);
    rep.rows.push_back(row);
  }
  rep.status = violated      ? DehnBoundStatus::violated
               : !all_exact ? DehnBoundStatus::inexact
                            : DehnBoundStatus::holds;
  return rep;
}

////////////////////////////////////////////////////////////////////////////
// Bounded word problem
////////////////////////////////////////////////////////////////////////////

namespace detail {

// Is v an integer combination of the rows? Rows are brought to echelon
// form by Euclidean row operations.
inline bool in_row_lattice(std::vector<std::vector<std::int64_t>> rows,
                           std::vector<std::int64_t> v) {
  std::size_t cols = v.size();
  std::size_t pivot_row = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r) {
        if (rows[r][c] != 0 &&
            (best == rows.size() || std::abs(rows[r][c]) < std::abs(rows[best][c]))) {
          best = r;
        }
      }
      if (best == rows.size()) {
        break;
      }
      std::swap(rows[pivot_row], rows[best]);
      bool clean = true;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        std::int64_t q = rows[r][c] / rows[pivot_row][c];
        for (std::size_t t = 0; t < cols; ++t) {
          rows[r][t] -= q * rows[pivot_row][t];
        }
        clean = clean && rows[r][c] == 0;
      }
      if (clean) {
        pivots.emplace_back(pivot_row, c);
        ++pivot_row;
        break;
      }
    }
  }
  for (auto [r, c] : pivots) {
    if (v[c] % rows[r][c] != 0) {
      return false;
    }
    std::int64_t q = v[c] / rows[r][c];
    for (std::size_t t = 0; t < cols; ++t) {
      v[t] -= q * rows[r][t];
    }
  }
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

}  // namespace detail

// Nonzero image in the abelianization proves a word nontrivial.
inline bool abelianization_obstructs(Presentation const& pres, Word const& w) {
  std::size_t g = pres.generator_count();
  auto vec = [&](Word const& x) {
    std::vector<std::int64_t> v(g);
    for (std::size_t t = 0; t < g; ++t) {
      v[t] = exponent_sum(x, t);
    }
    return v;
  };
  std::vector<std::vector<std::int64_t>> rows;
  for (auto const& r : pres.relators) {
    rows.push_back(vec(r));
  }
  return !detail::in_row_lattice(rows, vec(w));
}

enum class WordDecision { trivial, nontrivial, resource_exceeded };

inline std::string to_string(WordDecision d) {
  switch (d) {
    case WordDecision::trivial:
      return "trivial";
    case WordDecision::nontrivial:
      return "nontrivial";
    case WordDecision::resource_exceeded:
      return "resource_exceeded";
  }
  return {};
}

struct WordReport {
  WordDecision decision = WordDecision::nontrivial;
  // "empty", "abelianization", or "filling_search"
  std::string method;
  std::uint64_t area_cap = 0;
  std::size_t len_cap = 0;
  std::optional<AreaResult> search;
};

// Decides w given a certified isoperimetric function c * 2^(n - k). The
// caps make an exhausted search a proof of nontriviality.
inline WordReport solve_word_bounded(Presentation const& pres, int k, std::uint64_t c,
                                     Word const& w, int len_slack = 4,
                                     std::size_t state_cap = 2'000'000) {
  WordReport rep;
  Word r = free_reduce(w);
  if (r.empty()) {
    rep.decision = WordDecision::trivial;
    rep.method = "empty";
    return rep;
  }
  rep.area_cap = isoperimetric_bound(c, k, static_cast<int>(r.size()));
  rep.len_cap = r.size() + static_cast<std::size_t>(rep.area_cap) * pres.max_relator_length() +
                static_cast<std::size_t>(std::max(0, len_slack));
  if (abelianization_obstructs(pres, r)) {
    rep.decision = WordDecision::nontrivial;
    rep.method = "abelianization";
    return rep;
  }
  rep.method = "filling_search";
  if (pres.relators.empty()) {
    rep.decision = WordDecision::nontrivial;
    return rep;
  }
  AreaCaps caps;
  caps.len_cap = rep.len_cap;
  caps.area_cap = static_cast<int>(std::min<std::uint64_t>(rep.area_cap, 1'000'000));
  caps.state_cap = state_cap;
  rep.search = search_filling(pres, r, caps);
  switch (rep.search->status) {
    case SearchStatus::found:
      rep.decision = WordDecision::trivial;
      break;
    case SearchStatus::exhausted:
      rep.decision = WordDecision::nontrivial;
      break;
    case SearchStatus::resource_exceeded:
      rep.decision = WordDecision::resource_exceeded;
      break;
  }
  return rep;
}

////////////////////////////////////////////////////////////////////////////
// Splitting relations
////////////////////////////////////////////////////////////////////////////

// For a shortcut σ from g_{i-1} to g_j:
//   w1 = s_i ... s_j σ^-1            length (j - i + 1) + r
//   w2 = σ s_{j+1} ... s_n s_1 ... s_{i-1}   length n - (j - i + 1) + r
// Both are trivial and, since r < d, both are shorter than the cycle.
inline std::pair<Word, Word> split_relation(CayleyBall const& ball, Cycle const& cycle,
                                            Shortcut const& s) {
  std::size_t n = cycle.length();
  if (!(1 <= s.i && s.i < s.j && s.j <= n) ||
      s.path.size() >= cycle_distance(n, s.i, s.j)) {
    throw Error("invalid shortcut for this cycle");
  }
  auto end = ball.walk(cycle.vertices[s.i - 1], s.path);
  if (!end || *end != cycle.vertices[s.j]) {
    throw Error("shortcut path does not join its endpoints");
  }
  Word const& w = cycle.word;
  Word w1 = concat(subword(w, s.i - 1, s.j - s.i + 1), inverse(s.path));
  Word w2 = concat(concat(s.path, subword(w, s.j, n - s.j)), subword(w, 0, s.i - 1));
  return {w1, w2};
}

// For a trivial word that is not a simple relation: the shortest proper
// trivial block s_p..s_q ending earliest, and what remains around it.
inline std::optional<std::pair<Word, Word>> split_nonsimple(GroupOracle const& oracle,
                                                            Word const& w) {
  std::size_t n = w.size();
  std::vector<Element> prefix{oracle.identity()};
  for (Letter s : w.letters) {
    prefix.push_back(oracle.multiply(prefix.back(), s));
  }
  for (std::size_t q = 1; q <= n; ++q) {
    for (std::size_t p = q; p >= 1; --p) {
      if (p == 1 && q == n) {
        continue;
      }
      if (prefix[p - 1] == prefix[q]) {
        Word inner = subword(w, p - 1, q - p + 1);
        Word outer = concat(subword(w, 0, p - 1), subword(w, q, n - q));
        return std::make_pair(inner, outer);
      }
    }
  }
  return std::nullopt;
}

}  // namespace gchord
