#pragma once

// Finite balls of Cayley graphs, ball-internal distances and geodesics,
// Gromov hyperbolicity estimates, and the quotient tree of BS(1, n).
//
// Distances here are always measured inside the ball. They agree with the
// distance in the whole Cayley graph once the radius is large enough: if
// dist0(u), dist0(v) <= R0 and d(u, v) <= D, any R >= R0 + D suffices.
// Callers that need graph distances choose R accordingly.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "groups.hpp"
#include "parallel.hpp"
#include "rational.hpp"
#include "words.hpp"

namespace gchord {

using Vertex = std::uint32_t;
inline constexpr std::int32_t kNoVertex = -1;
inline constexpr std::int32_t kUnreached = -1;

inline constexpr std::size_t kDefaultVertexCap = 2'000'000;

// GCHORD_VERTEX_CAP overrides the default cap on ball sizes.
inline std::size_t vertex_cap_from_env() {
  if (char const* s = std::getenv("GCHORD_VERTEX_CAP"); s != nullptr && *s) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != nullptr && *end == '\0' && v > 0) {
      return static_cast<std::size_t>(v);
    }
    throw Error(std::string("GCHORD_VERTEX_CAP must be a positive integer, got '") +
                s + "'");
  }
  return kDefaultVertexCap;
}

class CayleyBall {
 public:
  OraclePtr oracle() const noexcept { return oracle_; }
  GroupOracle const& group() const noexcept { return *oracle_; }
  int radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  std::size_t letter_count() const noexcept { return letters_; }
  // True when the group is finite and the ball contains all of it.
  bool whole_group() const noexcept { return whole_group_; }

  Element const& element(Vertex v) const { return vertices_[v]; }
  std::vector<Element> const& elements() const noexcept { return vertices_; }
  int dist0(Vertex v) const { return dist0_[v]; }
  std::vector<int> const& dist0s() const noexcept { return dist0_; }

  // Neighbour g·s for the letter with the given code, or kNoVertex when it
  // lies outside the ball.
  std::int32_t neighbor(Vertex v, std::size_t code) const {
    return nbr_[static_cast<std::size_t>(v) * letters_ + code];
  }

  std::optional<Vertex> find(Element const& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<Vertex> find(Word const& w) const {
    return find(oracle_->normalize(w));
  }

  Vertex at(Word const& w) const {
    auto v = find(w);
    if (!v) {
      throw Error("element is outside the radius-" + std::to_string(radius_) +
                  " ball");
    }
    return *v;
  }

  // Vertex reached from v by reading w inside the ball.
  std::optional<Vertex> walk(Vertex v, Word const& w) const {
    for (Letter s : w.letters) {
      std::int32_t next = neighbor(v, s.code());
      if (next == kNoVertex) {
        return std::nullopt;
      }
      v = static_cast<Vertex>(next);
    }
    return v;
  }

  std::string format(Vertex v) const { return oracle_->format(vertices_[v]); }

  // Undirected edges (u < v) with the letter read from u to v; loops and
  // parallel edges from torsion generators are kept once per letter.
  struct Edge {
    Vertex u;
    Vertex v;
    Letter letter;
  };
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < size(); ++u) {
      for (std::size_t c = 0; c < letters_; ++c) {
        std::int32_t v = neighbor(u, c);
        Letter s = Letter::from_code(c);
        if (v == kNoVertex) {
          continue;
        }
        auto vv = static_cast<Vertex>(v);
        if (u < vv || (u == vv && s.sign > 0)) {
          out.push_back({u, vv, s});
        }
      }
    }
    return out;
  }

  friend CayleyBall build_ball(OraclePtr oracle, int radius,
                               std::size_t vertex_cap);

 private:
  OraclePtr oracle_;
  int radius_ = 0;
  bool whole_group_ = false;
  std::size_t letters_ = 0;
  std::vector<Element> vertices_;
  std::vector<int> dist0_;
  std::vector<std::int32_t> nbr_;
  std::unordered_map<Element, Vertex, ElementHash> index_;
};

// Breadth-first ball around the identity. Vertices are ordered by layer and
// then by normal form, so indices are reproducible.
inline CayleyBall build_ball(OraclePtr oracle, int radius,
                             std::size_t vertex_cap) {
  if (radius < 1) {
    throw Error("ball radius must be >= 1");
  }
  CayleyBall ball;
  ball.oracle_ = oracle;
  ball.radius_ = radius;
  ball.letters_ = oracle->letter_count();
  std::vector<Element> layer{oracle->identity()};
  ball.index_.emplace(layer.front(), 0);
  for (int d = 0;; ++d) {
    for (auto& g : layer) {
      ball.vertices_.push_back(g);
      ball.dist0_.push_back(d);
    }
    if (d == radius) {
      break;
    }
    std::vector<Element> next;
    for (auto const& g : layer) {
      for (std::size_t c = 0; c < ball.letters_; ++c) {
        Element h = oracle->multiply(g, Letter::from_code(c));
        if (ball.index_.emplace(h, 0).second) {
          next.push_back(std::move(h));
        }
      }
    }
    if (next.empty()) {
      break;  // finite group exhausted
    }
    if (ball.vertices_.size() + next.size() > vertex_cap) {
      throw CapExceeded("ball exceeds the vertex cap of " +
                        std::to_string(vertex_cap) + " at layer " +
                        std::to_string(d + 1) + " of " + std::to_string(radius));
    }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  for (Vertex v = 0; v < ball.vertices_.size(); ++v) {
    ball.index_[ball.vertices_[v]] = v;
  }
  ball.nbr_.assign(ball.vertices_.size() * ball.letters_, kNoVertex);
  for (Vertex v = 0; v < ball.vertices_.size(); ++v) {
    for (std::size_t c = 0; c < ball.letters_; ++c) {
      auto it = ball.index_.find(oracle->multiply(ball.vertices_[v],
                                                  Letter::from_code(c)));
      if (it != ball.index_.end()) {
        ball.nbr_[v * ball.letters_ + c] = static_cast<std::int32_t>(it->second);
      }
    }
  }
  ball.whole_group_ = std::find(ball.nbr_.begin(), ball.nbr_.end(), kNoVertex) ==
                      ball.nbr_.end();
  return ball;
}

inline CayleyBall build_ball(OraclePtr oracle, int radius) {
  return build_ball(std::move(oracle), radius, vertex_cap_from_env());
}

////////////////////////////////////////////////////////////////////////////
// Distances
////////////////////////////////////////////////////////////////////////////

// BFS distances from `source` inside the ball; vertices with blocked[v] set
// are never entered. Unreached vertices get kUnreached.
inline std::vector<std::int32_t> bfs(CayleyBall const& ball, Vertex source,
                                     std::vector<char> const* blocked = nullptr) {
  std::vector<std::int32_t> dist(ball.size(), kUnreached);
  if (blocked != nullptr && (*blocked)[source]) {
    return dist;
  }
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    for (std::size_t c = 0; c < ball.letter_count(); ++c) {
      std::int32_t v = ball.neighbor(u, c);
      if (v == kNoVertex || dist[static_cast<std::size_t>(v)] != kUnreached) {
        continue;
      }
      if (blocked != nullptr && (*blocked)[static_cast<std::size_t>(v)]) {
        continue;
      }
      dist[static_cast<std::size_t>(v)] = dist[u] + 1;
      queue.push_back(static_cast<Vertex>(v));
    }
  }
  return dist;
}

inline int distance(CayleyBall const& ball, Vertex u, Vertex v) {
  if (u == 0) {
    return ball.dist0(v);
  }
  if (v == 0) {
    return ball.dist0(u);
  }
  return bfs(ball, u)[v];
}

// Lexicographically least shortest word from u to v given BFS distances to v.
inline Word least_geodesic(CayleyBall const& ball, Vertex u, Vertex v,
                           std::vector<std::int32_t> const& dist_to_v) {
  if (dist_to_v[u] == kUnreached) {
    throw Error("vertices are not connected inside the ball");
  }
  Word w;
  while (u != v) {
    for (std::size_t c = 0; c < ball.letter_count(); ++c) {
      std::int32_t x = ball.neighbor(u, c);
      if (x != kNoVertex && dist_to_v[static_cast<std::size_t>(x)] ==
                                dist_to_v[u] - 1) {
        w.letters.push_back(Letter::from_code(c));
        u = static_cast<Vertex>(x);
        break;
      }
    }
  }
  return w;
}

inline Word least_geodesic(CayleyBall const& ball, Vertex u, Vertex v) {
  return least_geodesic(ball, u, v, bfs(ball, v));
}

// Vertices along the path that reads w from u.
inline std::vector<Vertex> path_vertices(CayleyBall const& ball, Vertex u,
                                         Word const& w) {
  std::vector<Vertex> out{u};
  for (Letter s : w.letters) {
    std::int32_t x = ball.neighbor(out.back(), s.code());
    if (x == kNoVertex) {
      throw Error("path leaves the ball");
    }
    out.push_back(static_cast<Vertex>(x));
  }
  return out;
}

struct GeodesicList {
  std::vector<Word> words;
  bool truncated = false;
  // False when a geodesic of the whole graph could leave the ball, so the
  // list may be missing some.
  bool complete_in_graph = true;
};

inline GeodesicList enumerate_geodesics(CayleyBall const& ball, Vertex u,
                                        Vertex v, std::size_t cap) {
  GeodesicList out;
  auto dist = bfs(ball, v);
  if (dist[u] == kUnreached) {
    throw Error("vertices are not connected inside the ball");
  }
  int d = dist[u];
  // every vertex on a length-d path from u to v has dist0 at most
  // (dist0(u) + dist0(v) + d) / 2
  out.complete_in_graph = ball.whole_group() ||
                          (ball.dist0(u) + ball.dist0(v) + d) / 2 <= ball.radius();
  Word prefix;
  auto rec = [&](auto&& self, Vertex x) -> bool {
    if (x == v) {
      if (out.words.size() == cap) {
        out.truncated = true;
        return false;
      }
      out.words.push_back(prefix);
      return true;
    }
    for (std::size_t c = 0; c < ball.letter_count(); ++c) {
      std::int32_t y = ball.neighbor(x, c);
      if (y == kNoVertex || dist[static_cast<std::size_t>(y)] != dist[x] - 1) {
        continue;
      }
      prefix.letters.push_back(Letter::from_code(c));
      bool go_on = self(self, static_cast<Vertex>(y));
      prefix.letters.pop_back();
      if (!go_on) {
        return false;
      }
    }
    return true;
  };
  rec(rec, u);
  return out;
}

// All-pairs ball-internal distances, one BFS per row.
class DistanceMatrix {
 public:
  static constexpr std::size_t kMaxVertices = 12'000;

  DistanceMatrix(CayleyBall const& ball, unsigned jobs) : n_(ball.size()) {
    if (n_ > kMaxVertices) {
      throw CapExceeded("distance matrix limited to " +
                        std::to_string(kMaxVertices) + " vertices, ball has " +
                        std::to_string(n_));
    }
    d_.assign(n_ * n_, 0);
    parallel_for(n_, jobs, [&](std::size_t i) {
      auto row = bfs(ball, static_cast<Vertex>(i));
      for (std::size_t j = 0; j < n_; ++j) {
        d_[i * n_ + j] = static_cast<std::uint16_t>(row[j]);
      }
    });
  }

  std::size_t size() const noexcept { return n_; }
  int operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<std::uint16_t> d_;
};

////////////////////////////////////////////////////////////////////////////
// Hyperbolicity
////////////////////////////////////////////////////////////////////////////

enum class DeltaMethod { four_point, rips };

inline std::string to_string(DeltaMethod m) {
  return m == DeltaMethod::four_point ? "four_point" : "rips";
}

struct DeltaEstimate {
  DeltaMethod method = DeltaMethod::four_point;
  Rational value;
  std::vector<Vertex> witnesses;
  std::uint64_t examined = 0;
  bool sampled = false;
  // A sample at least as large as the population was replaced by the full
  // scan.
  bool clamped = false;
};

inline constexpr std::uint64_t kDeltaSeed = 0x5eed'0f'd1'1a'9eULL;

namespace detail {

inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    return 0;
  }
  long double r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r = r * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
  }
  if (r > static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2)) {
    return std::numeric_limits<std::uint64_t>::max() / 2;
  }
  return static_cast<std::uint64_t>(r + 0.5L);
}

// Twice the four-point defect.
inline int four_point_defect2(DistanceMatrix const& d, std::size_t i,
                              std::size_t j, std::size_t k, std::size_t l) {
  int s1 = d(i, j) + d(k, l);
  int s2 = d(i, k) + d(j, l);
  int s3 = d(i, l) + d(j, k);
  int hi = std::max({s1, s2, s3});
  int lo = std::min({s1, s2, s3});
  int mid = s1 + s2 + s3 - hi - lo;
  return hi - mid;
}

// Sorted distinct k-subsets drawn with a fixed seed.
inline std::vector<std::vector<Vertex>> sample_subsets(std::size_t n,
                                                       std::size_t k,
                                                       std::uint64_t count,
                                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::vector<Vertex>> out;
  out.reserve(count);
  while (out.size() < count) {
    std::vector<Vertex> s;
    while (s.size() < k) {
      auto v = static_cast<Vertex>(pick(rng));
      if (std::find(s.begin(), s.end(), v) == s.end()) {
        s.push_back(v);
      }
    }
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

inline constexpr std::uint64_t kMaxExhaustiveTuples = 20'000'000'000ULL;

inline DeltaEstimate delta_four_point(CayleyBall const& ball,
                                      std::optional<std::uint64_t> sample,
                                      unsigned jobs,
                                      std::uint64_t seed = kDeltaSeed) {
  DeltaEstimate est;
  est.method = DeltaMethod::four_point;
  std::size_t n = ball.size();
  std::uint64_t population = detail::choose(n, 4);
  if (sample && *sample >= population) {
    est.clamped = true;
    sample.reset();
  }
  if (n < 4) {
    est.value = Rational(0);
    return est;
  }
  DistanceMatrix d(ball, jobs);
  int best = -1;
  if (sample) {
    est.sampled = true;
    auto subsets = detail::sample_subsets(n, 4, *sample, seed);
    for (auto const& s : subsets) {
      int v = detail::four_point_defect2(d, s[0], s[1], s[2], s[3]);
      if (v > best || (v == best && s < est.witnesses)) {
        best = v;
        est.witnesses = s;
      }
    }
    est.examined = subsets.size();
  } else {
    if (population > kMaxExhaustiveTuples) {
      throw CapExceeded("exhaustive four-point scan over " +
                        std::to_string(population) +
                        " quadruples; pass a sample size");
    }
    // per first index: best value and lexicographically least witness
    std::vector<int> row_best(n, -1);
    std::vector<std::vector<Vertex>> row_witness(n);
    parallel_for(n, jobs, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          for (std::size_t l = k + 1; l < n; ++l) {
            int v = detail::four_point_defect2(d, i, j, k, l);
            if (v > row_best[i]) {
              row_best[i] = v;
              row_witness[i] = {static_cast<Vertex>(i), static_cast<Vertex>(j),
                                static_cast<Vertex>(k), static_cast<Vertex>(l)};
            }
          }
        }
      }
    });
    for (std::size_t i = 0; i < n; ++i) {
      if (row_best[i] > best) {
        best = row_best[i];
        est.witnesses = row_witness[i];
      }
    }
    est.examined = population;
  }
  est.value = Rational(best, 2);
  return est;
}

namespace detail {

// Thinness of the triangle with lexicographically least geodesic sides.
inline int rips_thinness(CayleyBall const& ball, DistanceMatrix const& d,
                         Vertex x, Vertex y, Vertex z) {
  auto side = [&](Vertex p, Vertex q) {
    return path_vertices(ball, p, least_geodesic(ball, p, q));
  };
  std::vector<Vertex> sides[3] = {side(x, y), side(y, z), side(z, x)};
  int worst = 0;
  for (int s = 0; s < 3; ++s) {
    for (Vertex p : sides[s]) {
      int near = std::numeric_limits<int>::max();
      for (int t = 0; t < 3; ++t) {
        if (t == s) {
          continue;
        }
        for (Vertex q : sides[t]) {
          near = std::min(near, d(p, q));
        }
      }
      worst = std::max(worst, near);
    }
  }
  return worst;
}

}  // namespace detail

inline DeltaEstimate delta_rips(CayleyBall const& ball,
                                std::optional<std::uint64_t> sample,
                                unsigned jobs, std::uint64_t seed = kDeltaSeed) {
  DeltaEstimate est;
  est.method = DeltaMethod::rips;
  std::size_t n = ball.size();
  std::uint64_t population = detail::choose(n, 3);
  if (sample && *sample >= population) {
    est.clamped = true;
    sample.reset();
  }
  if (n < 3) {
    est.value = Rational(0);
    return est;
  }
  DistanceMatrix d(ball, jobs);
  std::vector<std::vector<Vertex>> triples;
  if (sample) {
    est.sampled = true;
    triples = detail::sample_subsets(n, 3, *sample, seed);
  } else {
    if (population > 50'000'000ULL) {
      throw CapExceeded("exhaustive Rips scan over " + std::to_string(population) +
                        " triangles; pass a sample size");
    }
    for (Vertex i = 0; i < n; ++i) {
      for (Vertex j = i + 1; j < n; ++j) {
        for (Vertex k = j + 1; k < n; ++k) {
          triples.push_back({i, j, k});
        }
      }
    }
  }
  std::vector<int> values(triples.size());
  parallel_for(triples.size(), jobs, [&](std::size_t t) {
    values[t] = detail::rips_thinness(ball, d, triples[t][0], triples[t][1],
                                      triples[t][2]);
  });
  int best = -1;
  for (std::size_t t = 0; t < triples.size(); ++t) {
    if (values[t] > best ||
        (values[t] == best && triples[t] < est.witnesses)) {
      best = values[t];
      est.witnesses = triples[t];
    }
  }
  est.examined = triples.size();
  est.value = Rational(best);
  return est;
}

inline DeltaEstimate delta(CayleyBall const& ball, DeltaMethod method,
                           std::optional<std::uint64_t> sample, unsigned jobs) {
  return method == DeltaMethod::four_point ? delta_four_point(ball, sample, jobs)
                                           : delta_rips(ball, sample, jobs);
}

////////////////////////////////////////////////////////////////////////////
// BS(1, n) quotient tree
////////////////////////////////////////////////////////////////////////////

struct FiberIdHash {
  std::size_t operator()(FiberId const& f) const noexcept {
    std::size_t seed = std::hash<std::int64_t>{}(f.height);
    detail::hash_combine(seed, detail::hash_int128(f.num));
    detail::hash_combine(seed, std::hash<std::int32_t>{}(f.j));
    return seed;
  }
};

// Horizontal lines of the ball collapsed to points; b-edges become tree
// edges.
struct QuotientTree {
  std::vector<FiberId> nodes;
  std::vector<std::int64_t> heights;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::vector<std::uint32_t>> adjacency;
  std::vector<std::uint32_t> fiber_of;

  bool connected() const {
    if (nodes.empty()) {
      return true;
    }
    std::vector<char> seen(nodes.size(), 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto v : adjacency[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == nodes.size();
  }

  bool is_tree() const { return connected() && edges.size() + 1 == nodes.size(); }

  // Node path between two nodes, empty if disconnected.
  std::vector<std::uint32_t> path(std::uint32_t from, std::uint32_t to) const {
    std::vector<std::int64_t> parent(nodes.size(), -1);
    std::deque<std::uint32_t> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      if (u == to) {
        break;
      }
      for (auto v : adjacency[u]) {
        if (parent[v] < 0) {
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (parent[to] < 0) {
      return {};
    }
    std::vector<std::uint32_t> out{to};
    while (out.back() != from) {
      out.push_back(static_cast<std::uint32_t>(parent[out.back()]));
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
};

inline QuotientTree quotient_tree(CayleyBall const& ball) {
  auto const& bs = as_bs(ball.group());
  QuotientTree qt;
  std::unordered_map<FiberId, std::uint32_t, FiberIdHash> index;
  qt.fiber_of.resize(ball.size());
  for (Vertex v = 0; v < ball.size(); ++v) {
    FiberId f = bs.fiber(ball.element(v));
    auto [it, fresh] = index.emplace(f, static_cast<std::uint32_t>(qt.nodes.size()));
    if (fresh) {
      qt.nodes.push_back(f);
      qt.heights.push_back(f.height);
    }
    qt.fiber_of[v] = it->second;
  }
  Letter b{1, 1};
  for (Vertex v = 0; v < ball.size(); ++v) {
    std::int32_t w = ball.neighbor(v, b.code());
    if (w == kNoVertex) {
      continue;
    }
    qt.edges.emplace_back(qt.fiber_of[v], qt.fiber_of[static_cast<Vertex>(w)]);
  }
  std::sort(qt.edges.begin(), qt.edges.end());
  qt.edges.erase(std::unique(qt.edges.begin(), qt.edges.end()), qt.edges.end());
  qt.adjacency.assign(qt.nodes.size(), {});
  for (auto [x, y] : qt.edges) {
    qt.adjacency[x].push_back(y);
    qt.adjacency[y].push_back(x);
  }
  return qt;
}

// Node of minimum height on the tree path between the fibers of x and y.
inline std::uint32_t branching_node(QuotientTree const& qt, Vertex x, Vertex y) {
  auto p = qt.path(qt.fiber_of[x], qt.fiber_of[y]);
  if (p.empty()) {
    throw RadiusError("fibers are not connected inside the ball; enlarge the radius");
  }
  return *std::min_element(p.begin(), p.end(), [&](auto s, auto t) {
    return qt.heights[s] < qt.heights[t];
  });
}

inline FiberId branching_point(QuotientTree const& qt, Vertex x, Vertex y) {
  return qt.nodes[branching_node(qt, x, y)];
}

}  // namespace gchord
