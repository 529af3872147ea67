#pragma once

// Simple cycles through the identity, shortcuts, and the bounded-scale
// chordality checks.
//
// Indexing: a cycle of length n visits g_0 = e, g_1, ..., g_n = g_0 where
// g_t = s_1...s_t. A pair (i, j) with 1 <= i < j <= n joins g_{i-1} to g_j;
// the cycle arc between them has length j - i + 1 and the cycle distance is
// d = min(j - i + 1, n - (j - i + 1)). A path of length r is a qualifying
// shortcut for the pair when r <= min(m, d - 1).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cayley.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "rational.hpp"
#include "words.hpp"

namespace gchord {

// A length bound that may be infinite.
class LengthBound {
 public:
  constexpr LengthBound(int value) : value_(value) {}  // NOLINT
  static constexpr LengthBound infinite() { return LengthBound(); }

  constexpr bool is_infinite() const noexcept { return value_ < 0; }
  constexpr int value() const noexcept { return value_; }
  constexpr int min(int x) const noexcept {
    return is_infinite() ? x : std::min(value_, x);
  }
  std::string to_string() const {
    return is_infinite() ? "inf" : std::to_string(value_);
  }

  friend constexpr bool operator==(LengthBound, LengthBound) = default;

 private:
  constexpr LengthBound() : value_(-1) {}
  int value_;
};

inline LengthBound parse_length_bound(std::string const& text) {
  if (text == "inf" || text == "infinity") {
    return LengthBound::infinite();
  }
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used == text.size() && v >= 1) {
      return v;
    }
  } catch (std::logic_error const&) {
  }
  throw ParseError("expected a positive integer or 'inf', got '" + text + "'");
}

inline int ceil_half(int n) { return (n + 1) / 2; }

// Smallest radius at which every check on cycles of length <= lmax is sound.
inline int required_radius(int lmax, LengthBound m) {
  return ceil_half(lmax) + m.min(ceil_half(lmax));
}

struct Cycle {
  Word word;
  // g_0, ..., g_n with g_n == g_0
  std::vector<Vertex> vertices;

  std::size_t length() const noexcept { return word.size(); }
};

// Checks that w spells a simple relation: its prefix products are pairwise
// distinct and the whole word is trivial.
inline bool is_simple_relation(GroupOracle const& oracle, Word const& w) {
  if (w.size() < 1) {
    return false;
  }
  std::vector<Element> seen{oracle.identity()};
  Element g = oracle.identity();
  for (std::size_t t = 0; t < w.size(); ++t) {
    g = oracle.multiply(g, w[t]);
    bool last = t + 1 == w.size();
    bool repeat = std::find(seen.begin(), seen.end(), g) != seen.end();
    if (last) {
      return g == seen.front();
    }
    if (repeat) {
      return false;
    }
    seen.push_back(g);
  }
  return false;
}

// The cycle spelled by w from the identity; throws unless w is a simple
// relation whose vertices all lie in the ball.
inline Cycle make_cycle(CayleyBall const& ball, Word const& w) {
  if (w.size() < 3) {
    throw Error("a cycle needs at least 3 letters");
  }
  Cycle c;
  c.word = w;
  c.vertices.push_back(0);
  for (Letter s : w.letters) {
    ball.group().check_letter(s);
    std::int32_t v = ball.neighbor(c.vertices.back(), s.code());
    if (v == kNoVertex) {
      throw RadiusError("cycle leaves the radius-" + std::to_string(ball.radius()) +
                        " ball");
    }
    c.vertices.push_back(static_cast<Vertex>(v));
  }
  if (c.vertices.back() != 0) {
    throw Error("word does not close up: it is not trivial in the group");
  }
  std::vector<Vertex> sorted(c.vertices.begin(), c.vertices.end() - 1);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error("word is not a simple relation: the closed path revisits a vertex");
  }
  return c;
}

////////////////////////////////////////////////////////////////////////////
// Enumeration
////////////////////////////////////////////////////////////////////////////

namespace detail {

class CycleSearch {
 public:
  CycleSearch(CayleyBall const& ball, int lmax)
      : ball_(ball), lmax_(lmax), on_path_(ball.size(), 0) {}

  // All simple closed walks from e whose first two letters are c1, c2, in
  // DFS order with letters tried in code order. Only canonical traversals
  // (word < inverse word) are kept.
  std::vector<Cycle> run(std::size_t c1, std::size_t c2) {
    out_.clear();
    std::int32_t v1 = ball_.neighbor(0, c1);
    if (v1 == kNoVertex || v1 == 0) {
      return {};
    }
    std::int32_t v2 = ball_.neighbor(static_cast<Vertex>(v1), c2);
    if (v2 == kNoVertex || v2 == 0 || v2 == v1) {
      return {};
    }
    if (ball_.dist0(static_cast<Vertex>(v2)) > lmax_ - 2) {
      return {};
    }
    on_path_[0] = 1;
    path_ = {0, static_cast<Vertex>(v1), static_cast<Vertex>(v2)};
    word_ = {Letter::from_code(c1), Letter::from_code(c2)};
    on_path_[static_cast<Vertex>(v1)] = 1;
    on_path_[static_cast<Vertex>(v2)] = 1;
    extend();
    on_path_[static_cast<Vertex>(v1)] = 0;
    on_path_[static_cast<Vertex>(v2)] = 0;
    on_path_[0] = 0;
    return std::move(out_);
  }

 private:
  void extend() {
    Vertex v = path_.back();
    int used = static_cast<int>(word_.size());
    for (std::size_t c = 0; c < ball_.letter_count(); ++c) {
      std::int32_t x = ball_.neighbor(v, c);
      if (x == kNoVertex) {
        continue;
      }
      auto w = static_cast<Vertex>(x);
      if (w == 0) {
        if (used + 1 >= 3 && used + 1 <= lmax_) {
          word_.push_back(Letter::from_code(c));
          emit();
          word_.pop_back();
        }
        continue;
      }
      if (on_path_[w] || ball_.dist0(w) > lmax_ - used - 1) {
        continue;
      }
      on_path_[w] = 1;
      path_.push_back(w);
      word_.push_back(Letter::from_code(c));
      extend();
      word_.pop_back();
      path_.pop_back();
      on_path_[w] = 0;
    }
  }

  void emit() {
    Word w(word_);
    if (!(w < inverse(w))) {
      return;
    }
    Cycle c;
    c.word = std::move(w);
    c.vertices = path_;
    c.vertices.push_back(0);
    out_.push_back(std::move(c));
  }

  CayleyBall const& ball_;
  int lmax_;
  std::vector<char> on_path_;
  std::vector<Vertex> path_;
  std::vector<Letter> word_;
  std::vector<Cycle> out_;
};

}  // namespace detail

// Simple cycles through the identity with 3 <= length <= lmax, one per
// pair {traversal, reverse traversal}, in a fixed order that does not depend
// on `jobs`.
inline std::vector<Cycle> enumerate_simple_cycles(CayleyBall const& ball, int lmax,
                                                  unsigned jobs = 1) {
  if (lmax < 3) {
    return {};
  }
  if (lmax > 2 * ball.radius()) {
    throw RadiusError("cycle length " + std::to_string(lmax) +
                      " exceeds twice the ball radius " +
                      std::to_string(ball.radius()));
  }
  if (ceil_half(lmax) > ball.radius()) {
    throw RadiusError("enumerating cycles of length " + std::to_string(lmax) +
                      " needs radius >= " + std::to_string(ceil_half(lmax)));
  }
  std::size_t letters = ball.letter_count();
  std::size_t tasks = letters * letters;
  std::vector<std::vector<Cycle>> parts(tasks);
  parallel_for(tasks, jobs, [&](std::size_t t) {
    detail::CycleSearch search(ball, lmax);
    parts[t] = search.run(t / letters, t % letters);
  });
  std::vector<Cycle> out;
  for (auto& p : parts) {
    std::move(p.begin(), p.end(), std::back_inserter(out));
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////
// Shortcuts
////////////////////////////////////////////////////////////////////////////

struct Shortcut {
  std::size_t i = 0;
  std::size_t j = 0;
  Word path;
  bool strict = false;
};

inline std::size_t cycle_distance(std::size_t n, std::size_t i, std::size_t j) {
  std::size_t arc = j - i + 1;
  return std::min(arc, n - arc);
}

// Largest shortcut length allowed for (i, j); 0 when none is possible.
inline int shortcut_bound(std::size_t n, std::size_t i, std::size_t j,
                          LengthBound m) {
  int d = static_cast<int>(cycle_distance(n, i, j));
  return d <= 1 ? 0 : m.min(d - 1);
}

inline int max_dist0(CayleyBall const& ball, Cycle const& c) {
  int r = 0;
  for (Vertex v : c.vertices) {
    r = std::max(r, ball.dist0(v));
  }
  return r;
}

inline void require_shortcut_radius(CayleyBall const& ball, Cycle const& c,
                                    LengthBound m) {
  int need = max_dist0(ball, c) + m.min(ceil_half(static_cast<int>(c.length())));
  if (ball.radius() < need && !ball.whole_group()) {
    throw RadiusError("shortcut search on this cycle needs radius >= " +
                      std::to_string(need) + ", ball has radius " +
                      std::to_string(ball.radius()));
  }
}

namespace detail {

// Length of the shortest path from p to q whose interior avoids the cycle,
// given BFS distances to q with the other cycle vertices removed. Returns -1
// when there is none.
inline int strict_distance(CayleyBall const& ball, std::vector<char> const& on_cycle,
                           std::vector<std::int32_t> const& dist_q, Vertex p,
                           Vertex q) {
  int best = -1;
  for (std::size_t c = 0; c < ball.letter_count(); ++c) {
    std::int32_t x = ball.neighbor(p, c);
    if (x == kNoVertex) {
      continue;
    }
    auto w = static_cast<Vertex>(x);
    int len = -1;
    if (w == q) {
      len = 1;
    } else if (!on_cycle[w] && dist_q[w] != kUnreached) {
      len = dist_q[w] + 1;
    }
    if (len > 0 && (best < 0 || len < best)) {
      best = len;
    }
  }
  return best;
}

inline Word strict_witness(CayleyBall const& ball, std::vector<char> const& on_cycle,
                           std::vector<std::int32_t> const& dist_q, Vertex p,
                           Vertex q, int len) {
  Word w;
  for (std::size_t c = 0; c < ball.letter_count(); ++c) {
    std::int32_t x = ball.neighbor(p, c);
    if (x == kNoVertex) {
      continue;
    }
    auto v = static_cast<Vertex>(x);
    if ((v == q && len == 1) ||
        (v != q && !on_cycle[v] && dist_q[v] == len - 1)) {
      w.letters.push_back(Letter::from_code(c));
      Word rest = least_geodesic(ball, v, q, dist_q);
      w.letters.insert(w.letters.end(), rest.letters.begin(), rest.letters.end());
      return w;
    }
  }
  throw Error("internal: strict witness not found");
}

}  // namespace detail

// All pairs (i, j) admitting a qualifying shortcut, each with its
// lexicographically least shortest witness. With strict_only, only paths
// meeting the cycle in their endpoints count.
inline std::vector<Shortcut> find_shortcuts(Cycle const& cycle, CayleyBall const& ball,
                                            LengthBound m, bool strict_only) {
  require_shortcut_radius(ball, cycle, m);
  std::size_t n = cycle.length();
  auto const& g = cycle.vertices;
  std::vector<char> on_cycle(ball.size(), 0);
  for (Vertex v : g) {
    on_cycle[v] = 1;
  }
  std::vector<Shortcut> out;
  for (std::size_t j = 2; j <= n; ++j) {
    Vertex q = g[j];
    std::vector<std::int32_t> dist_q;
    std::vector<std::int32_t> strict_q;
    for (std::size_t i = 1; i < j; ++i) {
      int bound = shortcut_bound(n, i, j, m);
      if (bound < 1) {
        continue;
      }
      Vertex p = g[i - 1];
      if (!strict_only) {
        if (dist_q.empty()) {
          dist_q = bfs(ball, q);
        }
        if (dist_q[p] == kUnreached || dist_q[p] > bound) {
          continue;
        }
        Shortcut s{i, j, least_geodesic(ball, p, q, dist_q), true};
        auto pv = path_vertices(ball, p, s.path);
        for (std::size_t t = 1; t + 1 < pv.size(); ++t) {
          if (on_cycle[pv[t]]) {
            s.strict = false;
          }
        }
        out.push_back(std::move(s));
      } else {
        if (strict_q.empty()) {
          std::vector<char> blocked = on_cycle;
          blocked[q] = 0;
          strict_q = bfs(ball, q, &blocked);
        }
        int len = detail::strict_distance(ball, on_cycle, strict_q, p, q);
        if (len < 0 || len > bound) {
          continue;
        }
        out.push_back({i, j, detail::strict_witness(ball, on_cycle, strict_q, p, q, len),
                       true});
      }
    }
  }
  return out;
}

// Re-checks a shortcut from scratch: endpoints, length bound and strictness.
inline bool verify_shortcut(Cycle const& cycle, CayleyBall const& ball,
                            Shortcut const& s, LengthBound m) {
  std::size_t n = cycle.length();
  if (!(1 <= s.i && s.i < s.j && s.j <= n)) {
    return false;
  }
  int bound = shortcut_bound(n, s.i, s.j, m);
  if (bound < 1 || static_cast<int>(s.path.size()) > bound ||
      s.path.size() >= cycle_distance(n, s.i, s.j)) {
    return false;
  }
  auto end = ball.walk(cycle.vertices[s.i - 1], s.path);
  if (!end || *end != cycle.vertices[s.j]) {
    return false;
  }
  auto pv = path_vertices(ball, cycle.vertices[s.i - 1], s.path);
  bool strict = true;
  for (std::size_t t = 1; t + 1 < pv.size(); ++t) {
    if (std::find(cycle.vertices.begin(), cycle.vertices.end(), pv[t]) !=
        cycle.vertices.end()) {
      strict = false;
    }
  }
  return strict == s.strict;
}

// Positions (mod n) of the endpoints g_{i-1}, g_j of the given shortcuts.
inline std::vector<std::size_t> shortcut_endpoints(std::size_t n,
                                                   std::vector<Shortcut> const& cuts) {
  std::vector<std::size_t> out;
  for (auto const& s : cuts) {
    out.push_back(s.i - 1);
    out.push_back(s.j % n);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Largest cyclic distance between consecutive positions; n + 1 when there
// are none (an "infinite" gap).
inline std::size_t max_cyclic_gap(std::size_t n, std::vector<std::size_t> const& pos) {
  if (pos.empty()) {
    return n + 1;
  }
  std::size_t gap = pos.front() + n - pos.back();
  for (std::size_t t = 1; t < pos.size(); ++t) {
    gap = std::max(gap, pos[t] - pos[t - 1]);
  }
  return gap;
}

////////////////////////////////////////////////////////////////////////////
// Chordality checks
////////////////////////////////////////////////////////////////////////////

enum class ChordalStatus { verified_up_to_bound, counterexample };

inline std::string to_string(ChordalStatus s) {
  return s == ChordalStatus::verified_up_to_bound ? "verified_up_to_bound"
                                                  : "counterexample";
}

enum class ChordalMode { km, ikm, dense };

inline std::string to_string(ChordalMode m) {
  switch (m) {
    case ChordalMode::km:
      return "km";
    case ChordalMode::ikm:
      return "ikm";
    case ChordalMode::dense:
      return "dense";
  }
  return {};
}

// Per-cycle outcome of a check.
struct CycleVerdict {
  bool passes = false;
  std::size_t shortcut_pairs = 0;
  // max cyclic gap between shortcut endpoints (ikm, dense); n + 1 if none
  std::size_t max_gap = 0;
  std::string missing;
};

struct ChordalityReport {
  ChordalMode mode = ChordalMode::km;
  int k = 0;
  LengthBound m = LengthBound::infinite();
  std::optional<int> i0;
  std::optional<int> eps;
  int lmax = 0;
  int radius = 0;
  ChordalStatus status = ChordalStatus::verified_up_to_bound;
  std::optional<Cycle> witness;
  std::string missing;
  std::size_t cycles_enumerated = 0;
  std::size_t cycles_checked = 0;
  std::map<std::size_t, std::size_t> cycles_by_length;
  // histogram of per-cycle max endpoint gap (ikm and dense only)
  std::map<std::size_t, std::size_t> gap_histogram;
  // per checked cycle, in enumeration order
  std::vector<CycleVerdict> verdicts;
};

inline CycleVerdict judge_cycle(Cycle const& c, CayleyBall const& ball, ChordalMode mode,
                                LengthBound m, int param) {
  CycleVerdict v;
  std::size_t n = c.length();
  auto cuts = find_shortcuts(c, ball, m, mode == ChordalMode::dense);
  v.shortcut_pairs = cuts.size();
  switch (mode) {
    case ChordalMode::km:
      v.passes = !cuts.empty();
      if (!v.passes) {
        v.missing = m.is_infinite() ? "no shortcut"
                                    : "no shortcut of length <= " + m.to_string();
      }
      break;
    case ChordalMode::ikm: {
      v.max_gap = max_cyclic_gap(n, shortcut_endpoints(n, cuts));
      v.passes = v.max_gap <= static_cast<std::size_t>(param);
      if (!v.passes) {
        v.missing = cuts.empty() ? "no shortcut"
                                 : "shortcut starts leave a cyclic gap of " +
                                       std::to_string(v.max_gap) + " > i0 = " +
                                       std::to_string(param);
      }
      break;
    }
    case ChordalMode::dense: {
      v.max_gap = max_cyclic_gap(n, shortcut_endpoints(n, cuts));
      v.passes = v.max_gap < 2 * static_cast<std::size_t>(param);
      if (!v.passes) {
        v.missing = cuts.empty() ? "no strict shortcut"
                                 : "strict shortcut vertices leave a cyclic gap of " +
                                       std::to_string(v.max_gap) + " >= 2 eps = " +
                                       std::to_string(2 * param);
      }
      break;
    }
  }
  return v;
}

namespace detail {

inline ChordalityReport run_check(CayleyBall const& ball, ChordalMode mode, int k,
                                  LengthBound m, int param, int lmax, unsigned jobs) {
  if (k < 3) {
    throw Error("k must be >= 3");
  }
  int need = required_radius(lmax, m);
  if (ball.radius() < need && !ball.whole_group()) {
    throw RadiusError("chordality up to length " + std::to_string(lmax) +
                      " with m = " + m.to_string() + " needs radius >= " +
                      std::to_string(need) + ", ball has radius " +
                      std::to_string(ball.radius()));
  }
  ChordalityReport r;
  r.mode = mode;
  r.k = k;
  r.m = m;
  r.lmax = lmax;
  r.radius = ball.radius();
  auto cycles = enumerate_simple_cycles(ball, lmax, jobs);
  r.cycles_enumerated = cycles.size();
  std::vector<Cycle const*> checked;
  for (auto const& c : cycles) {
    ++r.cycles_by_length[c.length()];
    if (static_cast<int>(c.length()) >= k) {
      checked.push_back(&c);
    }
  }
  r.cycles_checked = checked.size();
  r.verdicts.resize(checked.size());
  parallel_for(checked.size(), jobs, [&](std::size_t t) {
    r.verdicts[t] = judge_cycle(*checked[t], ball, mode, m, param);
  });
  for (std::size_t t = 0; t < checked.size(); ++t) {
    auto const& v = r.verdicts[t];
    if (mode != ChordalMode::km) {
      ++r.gap_histogram[v.max_gap];
    }
    if (!v.passes && !r.witness) {
      r.status = ChordalStatus::counterexample;
      r.witness = *checked[t];
      r.missing = v.missing;
    }
  }
  return r;
}

}  // namespace detail

inline ChordalityReport check_km_chordal(CayleyBall const& ball, int k, LengthBound m,
                                         int lmax, unsigned jobs = 1) {
  return detail::run_check(ball, ChordalMode::km, k, m, 0, lmax, jobs);
}

inline ChordalityReport check_ikm_chordal(CayleyBall const& ball, int i0, int k,
                                          LengthBound m, int lmax, unsigned jobs = 1) {
  if (i0 < 1) {
    throw Error("i0 must be >= 1");
  }
  auto r = detail::run_check(ball, ChordalMode::ikm, k, m, i0, lmax, jobs);
  r.i0 = i0;
  return r;
}

inline ChordalityReport check_densely_chordal(CayleyBall const& ball, int eps, int k,
                                              LengthBound m, int lmax,
                                              unsigned jobs = 1) {
  if (eps < 1) {
    throw Error("eps must be >= 1");
  }
  auto r = detail::run_check(ball, ChordalMode::dense, k, m, eps, lmax, jobs);
  r.eps = eps;
  return r;
}

////////////////////////////////////////////////////////////////////////////
// BS(1, n) cycles without shortcuts, and hyperbolicity constants
////////////////////////////////////////////////////////////////////////////

// a b^N a b^-N a^-1 b^N a^-1 b^-N, which closes because b^N a b^-N = a^(n^N).
inline Word bs_gamma_word(int N) {
  if (N < 1) {
    throw Error("N must be >= 1");
  }
  Letter a{0, 1};
  Letter b{1, 1};
  Word w;
  auto push = [&](Letter s, int times) {
    for (int t = 0; t < times; ++t) {
      w.letters.push_back(s);
    }
  };
  push(a, 1);
  push(b, N);
  push(a, 1);
  push(b.inverse(), N);
  push(a.inverse(), 1);
  push(b, N);
  push(a.inverse(), 1);
  push(b.inverse(), N);
  return w;
}

// Radius at which shortcut checks on gamma_N are sound for unbounded m:
// twice the cycle length 4N + 4, halved.
inline int bs_gamma_radius(int N) { return (2 * N + 2) + (2 * N + 2); }

inline Cycle bs_gamma_N(CayleyBall const& ball, int N) {
  auto const& bs = as_bs(ball.group());
  if (bs.n() < 2) {
    throw Error("gamma_N needs n >= 2");
  }
  Word w = bs_gamma_word(N);
  if (!is_simple_relation(bs, w)) {
    throw Error("internal: gamma_N is not a simple relation under the oracle");
  }
  return make_cycle(ball, w);
}

inline Rational chordal_delta_bound(int i0, int k, int m) {
  if (i0 < 1 || k < 1 || m < 1) {
    throw Error("i0, k, m must be positive");
  }
  return std::max(Rational(k, 4), Rational(m + i0));
}

inline std::pair<Rational, Rational> delta_to_chordal(Rational delta) {
  return {Rational(4) * delta + Rational(2), Rational(4) * delta + Rational(3)};
}

}  // namespace gchord
