#pragma once

// Vertex separators inside Cayley balls: separation and minimality tests,
// minimum vertex cuts, diameters, separating families, and bottleneck
// constant estimates.
//
// Everything is ball-restricted: "separates" means no path inside the ball.
// Callers pick radii large enough for the detours they care about.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cayley.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "rational.hpp"

namespace gchord {

using VertexSet = std::vector<Vertex>;

inline VertexSet normalize_set(VertexSet p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return p;
}

namespace detail {

inline std::vector<char> mask_of(CayleyBall const& ball, VertexSet const& p) {
  std::vector<char> m(ball.size(), 0);
  for (Vertex v : p) {
    if (v >= ball.size()) {
      throw Error("vertex index out of range");
    }
    m[v] = 1;
  }
  return m;
}

inline void check_endpoints(std::vector<char> const& mask, Vertex a, Vertex b) {
  if (a == b) {
    throw Error("separator endpoints must differ");
  }
  if (mask[a] || mask[b]) {
    throw Error("separator must not contain its endpoints");
  }
}

}  // namespace detail

inline bool is_separator(CayleyBall const& ball, VertexSet const& p, Vertex a, Vertex b) {
  auto mask = detail::mask_of(ball, p);
  detail::check_endpoints(mask, a, b);
  return bfs(ball, a, &mask)[b] == kUnreached;
}

// Neighbour criterion: every vertex of P touches both the component of a
// and the component of b in ball minus P.
inline bool is_minimal_separator(CayleyBall const& ball, VertexSet const& p, Vertex a,
                                 Vertex b) {
  auto mask = detail::mask_of(ball, p);
  detail::check_endpoints(mask, a, b);
  auto from_a = bfs(ball, a, &mask);
  if (from_a[b] != kUnreached) {
    throw Error("set does not separate the endpoints");
  }
  auto from_b = bfs(ball, b, &mask);
  for (Vertex v : p) {
    bool touches_a = false;
    bool touches_b = false;
    for (std::size_t c = 0; c < ball.letter_count(); ++c) {
      std::int32_t w = ball.neighbor(v, c);
      if (w == kNoVertex) {
        continue;
      }
      touches_a |= from_a[static_cast<Vertex>(w)] != kUnreached;
      touches_b |= from_b[static_cast<Vertex>(w)] != kUnreached;
    }
    if (!touches_a || !touches_b) {
      return false;
    }
  }
  return true;
}

// Definition-level check: deleting any single vertex breaks separation.
inline bool is_minimal_separator_bruteforce(CayleyBall const& ball, VertexSet const& p,
                                            Vertex a, Vertex b) {
  if (!is_separator(ball, p, a, b)) {
    throw Error("set does not separate the endpoints");
  }
  for (std::size_t t = 0; t < p.size(); ++t) {
    VertexSet q = p;
    q.erase(q.begin() + static_cast<std::ptrdiff_t>(t));
    if (is_separator(ball, q, a, b)) {
      return false;
    }
  }
  return true;
}

inline int separator_diameter(CayleyBall const& ball, VertexSet const& p,
                              unsigned jobs = 1) {
  if (p.empty()) {
    throw Error("diameter of an empty set");
  }
  std::vector<int> rows(p.size(), 0);
  parallel_for(p.size(), jobs, [&](std::size_t t) {
    auto d = bfs(ball, p[t]);
    for (Vertex q : p) {
      rows[t] = std::max(rows[t], d[q]);
    }
  });
  return *std::max_element(rows.begin(), rows.end());
}

struct SeparatorCertificate {
  Vertex a = 0;
  Vertex b = 0;
  VertexSet p;
  bool separates = false;
  bool inclusion_minimal = false;
  int diameter_in_ball = 0;
  bool cut_is_minimum = false;
};

inline SeparatorCertificate certify_separator(CayleyBall const& ball, VertexSet p,
                                              Vertex a, Vertex b, unsigned jobs = 1) {
  SeparatorCertificate cert;
  cert.a = a;
  cert.b = b;
  cert.p = normalize_set(std::move(p));
  cert.separates = is_separator(ball, cert.p, a, b);
  cert.inclusion_minimal = cert.separates && is_minimal_separator(ball, cert.p, a, b);
  cert.diameter_in_ball = cert.p.empty() ? 0 : separator_diameter(ball, cert.p, jobs);
  return cert;
}

namespace detail {

// Unit-capacity max flow on the vertex-split graph, by BFS augmentation.
class VertexCutFlow {
 public:
  VertexCutFlow(CayleyBall const& ball, Vertex a, Vertex b) : ball_(ball) {
    std::size_t n = ball.size();
    head_.assign(2 * n, -1);
    for (Vertex v = 0; v < n; ++v) {
      int cap = (v == a || v == b) ? kInf : 1;
      add_edge(in(v), out(v), cap);
    }
    for (Vertex u = 0; u < n; ++u) {
      for (std::size_t c = 0; c < ball.letter_count(); ++c) {
        std::int32_t w = ball.neighbor(u, c);
        if (w != kNoVertex && static_cast<Vertex>(w) != u) {
          add_edge(out(u), in(static_cast<Vertex>(w)), kInf);
        }
      }
    }
    source_ = out(a);
    sink_ = in(b);
  }

  int run() {
    int flow = 0;
    while (augment()) {
      ++flow;
    }
    return flow;
  }

  // Split vertices crossing the residual cut nearest the source.
  VertexSet cut() const {
    auto reach = reachable();
    VertexSet out_set;
    for (Vertex v = 0; v < ball_.size(); ++v) {
      if (reach[in(v)] && !reach[out(v)]) {
        out_set.push_back(v);
      }
    }
    return out_set;
  }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max() / 4;

  static std::size_t in(Vertex v) { return 2 * static_cast<std::size_t>(v); }
  static std::size_t out(Vertex v) { return 2 * static_cast<std::size_t>(v) + 1; }

  void add_edge(std::size_t from, std::size_t to, int cap) {
    to_.push_back(to);
    cap_.push_back(cap);
    next_.push_back(head_[from]);
    head_[from] = static_cast<std::int64_t>(to_.size() - 1);
    to_.push_back(from);
    cap_.push_back(0);
    next_.push_back(head_[to]);
    head_[to] = static_cast<std::int64_t>(to_.size() - 1);
  }

  bool augment() {
    std::vector<std::int64_t> via(head_.size(), -1);
    std::vector<char> seen(head_.size(), 0);
    std::deque<std::size_t> queue{source_};
    seen[source_] = 1;
    while (!queue.empty() && !seen[sink_]) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::int64_t e = head_[u]; e >= 0; e = next_[static_cast<std::size_t>(e)]) {
        auto ee = static_cast<std::size_t>(e);
        if (cap_[ee] > 0 && !seen[to_[ee]]) {
          seen[to_[ee]] = 1;
          via[to_[ee]] = e;
          queue.push_back(to_[ee]);
        }
      }
    }
    if (!seen[sink_]) {
      return false;
    }
    for (std::size_t v = sink_; v != source_;) {
      auto e = static_cast<std::size_t>(via[v]);
      cap_[e] -= 1;
      cap_[e ^ 1] += 1;
      v = to_[e ^ 1];
    }
    return true;
  }

  std::vector<char> reachable() const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<std::size_t> stack{source_};
    seen[source_] = 1;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::int64_t e = head_[u]; e >= 0; e = next_[static_cast<std::size_t>(e)]) {
        auto ee = static_cast<std::size_t>(e);
        if (cap_[ee] > 0 && !seen[to_[ee]]) {
          seen[to_[ee]] = 1;
          stack.push_back(to_[ee]);
        }
      }
    }
    return seen;
  }

  CayleyBall const& ball_;
  std::vector<std::int64_t> head_;
  std::vector<std::size_t> to_;
  std::vector<int> cap_;
  std::vector<std::int64_t> next_;
  std::size_t source_ = 0;
  std::size_t sink_ = 0;
};

}  // namespace detail

inline bool adjacent(CayleyBall const& ball, Vertex u, Vertex v) {
  for (std::size_t c = 0; c < ball.letter_count(); ++c) {
    if (ball.neighbor(u, c) == static_cast<std::int32_t>(v)) {
      return true;
    }
  }
  return false;
}

inline SeparatorCertificate min_vertex_cut(CayleyBall const& ball, Vertex a, Vertex b,
                                           unsigned jobs = 1) {
  if (a == b) {
    throw Error("min vertex cut needs distinct endpoints");
  }
  if (adjacent(ball, a, b)) {
    throw Error("min vertex cut is undefined for adjacent endpoints");
  }
  detail::VertexCutFlow flow(ball, a, b);
  int size = flow.run();
  auto cert = certify_separator(ball, flow.cut(), a, b, jobs);
  if (static_cast<int>(cert.p.size()) != size || !cert.separates) {
    throw Error("internal: max-flow cut is inconsistent");
  }
  cert.cut_is_minimum = true;
  return cert;
}

////////////////////////////////////////////////////////////////////////////
// Midpoints
////////////////////////////////////////////////////////////////////////////

// A midpoint of a geodesic: a vertex, or the midpoint of the edge
// (u, v) when the geodesic has odd length.
struct Midpoint {
  Vertex u = 0;
  std::optional<Vertex> v;

  bool on_edge() const noexcept { return v.has_value(); }
};

// Midpoint of the lexicographically least geodesic from x to y, with that
// geodesic's vertices.
inline std::pair<Midpoint, std::vector<Vertex>> least_geodesic_midpoint(
    CayleyBall const& ball, Vertex x, Vertex y) {
  auto path = path_vertices(ball, x, least_geodesic(ball, x, y));
  std::size_t d = path.size() - 1;
  Midpoint m;
  m.u = path[d / 2];
  if (d % 2 == 1) {
    m.v = path[d / 2 + 1];
  }
  return {m, path};
}

// Distance from every vertex to the midpoint, doubled so that edge
// midpoints stay integral: 2 d(w, c).
inline std::vector<std::int32_t> doubled_distance_to(CayleyBall const& ball,
                                                     Midpoint const& m) {
  auto du = bfs(ball, m.u);
  std::vector<std::int32_t> out(ball.size());
  if (!m.on_edge()) {
    for (std::size_t w = 0; w < out.size(); ++w) {
      out[w] = 2 * du[w];
    }
    return out;
  }
  auto dv = bfs(ball, *m.v);
  for (std::size_t w = 0; w < out.size(); ++w) {
    out[w] = 2 * std::min(du[w], dv[w]) + 1;
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////
// Separating families
////////////////////////////////////////////////////////////////////////////

struct FamilyEntry {
  Vertex target = 0;
  int distance = 0;
  Midpoint midpoint;
  Vertex v_x = 0;
  VertexSet raw;
  VertexSet shrunk;
  bool gap = false;
  std::string gap_reason;
  int raw_diameter = 0;
  int diameter = 0;
  // least distance from the shrunk set to the midpoint
  Rational midpoint_offset;
};

struct SeparatingFamily {
  Rational delta;
  int max_target_distance = 0;
  std::vector<FamilyEntry> entries;
  std::size_t gaps = 0;
  // max over gap-free entries
  int family_diameter = 0;
  int raw_family_diameter = 0;
  // the smallest k for which the gap-free entries form a k-separating family
  Rational k;
};

// For each target x with 2 <= d(e, x) <= R - (delta + 1): take the midpoint
// of the least geodesic from e to x, let v_x be its lower vertex, and try
// the neighbourhood of radius delta + 1/2 around v_x (without e and x) as an
// e-x separator, shrunk to an inclusion-minimal one.
inline SeparatingFamily build_separating_family(CayleyBall const& ball, Rational delta,
                                                unsigned jobs = 1) {
  if (delta < Rational(0)) {
    throw Error("delta must be >= 0");
  }
  SeparatingFamily fam;
  fam.delta = delta;
  fam.max_target_distance = static_cast<int>((Rational(ball.radius()) - delta - 1).floor());
  int reach = static_cast<int>((delta + Rational(1, 2)).floor());
  std::vector<Vertex> targets;
  for (Vertex x = 0; x < ball.size(); ++x) {
    if (ball.dist0(x) >= 2 && ball.dist0(x) <= fam.max_target_distance) {
      targets.push_back(x);
    }
  }
  fam.entries.resize(targets.size());
  parallel_for(targets.size(), jobs, [&](std::size_t t) {
    FamilyEntry& e = fam.entries[t];
    Vertex x = targets[t];
    e.target = x;
    e.distance = ball.dist0(x);
    auto [mid, path] = least_geodesic_midpoint(ball, 0, x);
    e.midpoint = mid;
    e.v_x = mid.u;
    auto dv = bfs(ball, e.v_x);
    for (Vertex w = 0; w < ball.size(); ++w) {
      if (dv[w] != kUnreached && dv[w] <= reach && w != 0 && w != x) {
        e.raw.push_back(w);
      }
    }
    e.raw_diameter = separator_diameter(ball, e.raw);
    if (!is_separator(ball, e.raw, 0, x)) {
      e.gap = true;
      e.gap_reason = "neighbourhood does not separate e from the target";
      return;
    }
    e.shrunk = e.raw;
    for (Vertex w : e.raw) {
      VertexSet trial;
      std::copy_if(e.shrunk.begin(), e.shrunk.end(), std::back_inserter(trial),
                   [&](Vertex z) { return z != w; });
      if (!trial.empty() && is_separator(ball, trial, 0, x)) {
        e.shrunk = std::move(trial);
      }
    }
    e.diameter = separator_diameter(ball, e.shrunk);
    auto dm = doubled_distance_to(ball, mid);
    int best = std::numeric_limits<int>::max();
    for (Vertex w : e.shrunk) {
      best = std::min(best, dm[w]);
    }
    e.midpoint_offset = Rational(best, 2);
  });
  for (auto const& e : fam.entries) {
    if (e.gap) {
      ++fam.gaps;
      continue;
    }
    fam.family_diameter = std::max(fam.family_diameter, e.diameter);
    fam.raw_family_diameter = std::max(fam.raw_family_diameter, e.raw_diameter);
    fam.k = std::max(fam.k, e.midpoint_offset);
  }
  return fam;
}

////////////////////////////////////////////////////////////////////////////
// Bottleneck estimates
////////////////////////////////////////////////////////////////////////////

struct BpPair {
  Vertex x = 0;
  Vertex y = 0;
  int distance = 0;
  Midpoint midpoint;
  Rational delta_pair;
};

struct BpEstimate {
  std::vector<BpPair> pairs;
  Rational value;
};

// Does removing N_Δ(c), with Δ = half_delta / 2, cut x from y in the ball?
inline bool bp_separated(CayleyBall const& ball, Vertex x, Vertex y, Midpoint const& m,
                         std::vector<std::int32_t> const& doubled, int half_delta) {
  std::vector<char> removed(ball.size(), 0);
  for (std::size_t w = 0; w < ball.size(); ++w) {
    removed[w] = doubled[w] <= half_delta;
  }
  if (removed[x] || removed[y]) {
    return true;
  }
  // BFS that also refuses to cross the midpoint edge itself
  std::vector<char> seen(ball.size(), 0);
  std::vector<Vertex> queue{x};
  seen[x] = 1;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    Vertex u = queue[h];
    for (std::size_t c = 0; c < ball.letter_count(); ++c) {
      std::int32_t w = ball.neighbor(u, c);
      if (w == kNoVertex) {
        continue;
      }
      auto ww = static_cast<Vertex>(w);
      if (seen[ww] || removed[ww]) {
        continue;
      }
      if (m.on_edge() && ((u == m.u && ww == *m.v) || (u == *m.v && ww == m.u))) {
        continue;
      }
      if (ww == y) {
        return false;
      }
      seen[ww] = 1;
      queue.push_back(ww);
    }
  }
  return true;
}

inline BpPair bp_pair(CayleyBall const& ball, Vertex x, Vertex y) {
  BpPair p;
  p.x = x;
  p.y = y;
  auto [mid, path] = least_geodesic_midpoint(ball, x, y);
  p.distance = static_cast<int>(path.size()) - 1;
  if (p.distance < 2) {
    throw Error("bottleneck pairs need endpoints at distance >= 2");
  }
  p.midpoint = mid;
  auto doubled = doubled_distance_to(ball, mid);
  // least half-integer Δ in [0, d/2] that separates; Δ = d/2 always does
  int lo = 0;
  int hi = p.distance;
  while (lo < hi) {
    int t = (lo + hi) / 2;
    if (bp_separated(ball, x, y, mid, doubled, t)) {
      hi = t;
    } else {
      lo = t + 1;
    }
  }
  p.delta_pair = Rational(lo, 2);
  return p;
}

inline BpEstimate estimate_bp(CayleyBall const& ball,
                              std::vector<std::pair<Vertex, Vertex>> const& pairs,
                              unsigned jobs = 1) {
  BpEstimate est;
  est.pairs.resize(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t t) {
    est.pairs[t] = bp_pair(ball, pairs[t].first, pairs[t].second);
  });
  for (auto const& p : est.pairs) {
    est.value = std::max(est.value, p.delta_pair);
  }
  return est;
}

// Pairs (g^-1, g) over the sphere of radius r, one per unordered pair, kept
// only when the endpoints are at distance >= 2.
inline std::vector<std::pair<Vertex, Vertex>> opposite_pairs(CayleyBall const& ball,
                                                             int r) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex g = 0; g < ball.size(); ++g) {
    if (ball.dist0(g) != r) {
      continue;
    }
    auto inv = ball.find(ball.group().inverse(ball.element(g)));
    if (inv && *inv > g && distance(ball, g, *inv) >= 2) {
      out.emplace_back(g, *inv);
    }
  }
  return out;
}

}  // namespace gchord
