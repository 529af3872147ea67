#pragma once

// JSON and DOT renderings of balls, reports and certificates. Keys keep
// insertion order so the output is byte-stable.

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cayley.hpp"
#include "chordality.hpp"
#include "dehn.hpp"
#include "separators.hpp"
#include "words.hpp"

namespace gchord {

using Json = nlohmann::ordered_json;

inline constexpr char const* kVersion = "1.0.0";

inline std::string fnv1a_hex(std::string const& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Json group_json(Presentation const& p) {
  auto text = to_text(p);
  return Json{{"name", p.name},
              {"backend", p.backend.to_string()},
              {"presentation", text},
              {"hash", fnv1a_hex(text)}};
}

inline std::string letter_text(Presentation const& p, Letter s) {
  return p.print(Word({s}));
}

// Lexicographically least geodesic word from the identity.
inline Word vertex_word(CayleyBall const& ball, Vertex v) {
  return least_geodesic(ball, 0, v);
}

inline Json vertex_words(Presentation const& p, CayleyBall const& ball,
                         VertexSet const& set) {
  Json out = Json::array();
  for (Vertex v : set) {
    out.push_back(p.print(vertex_word(ball, v)));
  }
  return out;
}

inline Json ball_json(Presentation const& p, CayleyBall const& ball) {
  Json vertices = Json::array();
  for (Vertex v = 0; v < ball.size(); ++v) {
    vertices.push_back(ball.format(v));
  }
  Json edges = Json::array();
  for (auto const& e : ball.edges()) {
    edges.push_back(Json::array({e.u, e.v, letter_text(p, e.letter)}));
  }
  return Json{{"backend", p.backend.to_string()},
              {"radius", ball.radius()},
              {"size", ball.size()},
              {"vertices", std::move(vertices)},
              {"edges", std::move(edges)}};
}

inline std::string ball_dot(Presentation const& p, CayleyBall const& ball) {
  std::ostringstream os;
  os << "graph \"" << p.name << "_R" << ball.radius() << "\" {\n";
  for (Vertex v = 0; v < ball.size(); ++v) {
    os << "  " << v << " [label=\"" << ball.format(v) << "\"];\n";
  }
  for (auto const& e : ball.edges()) {
    os << "  " << e.u << " -- " << e.v << " [label=\"" << letter_text(p, e.letter)
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

inline Json shortcut_json(Presentation const& p, Shortcut const& s) {
  return Json{{"i", s.i}, {"j", s.j}, {"path", p.print(s.path)}, {"strict", s.strict}};
}

inline Json histogram_json(std::map<std::size_t, std::size_t> const& h) {
  Json out = Json::object();
  for (auto [key, count] : h) {
    out[std::to_string(key)] = count;
  }
  return out;
}

inline Json chordal_json(Presentation const& p, ChordalityReport const& r) {
  Json params{{"mode", to_string(r.mode)}, {"k", r.k}, {"m", r.m.to_string()}};
  if (r.i0) {
    params["i0"] = *r.i0;
  }
  if (r.eps) {
    params["eps"] = *r.eps;
  }
  Json out{{"params", params},
           {"lmax", r.lmax},
           {"radius", r.radius},
           {"status", to_string(r.status)}};
  if (r.witness) {
    out["witness"] = Json{{"word", p.print(r.witness->word)},
                          {"length", r.witness->length()},
                          {"missing", r.missing}};
  } else {
    out["witness"] = nullptr;
  }
  Json stats{{"cycles_enumerated", r.cycles_enumerated},
             {"cycles_checked", r.cycles_checked},
             {"cycles_by_length", histogram_json(r.cycles_by_length)}};
  if (r.mode != ChordalMode::km) {
    stats["max_gap_histogram"] = histogram_json(r.gap_histogram);
  }
  out["stats"] = stats;
  return out;
}

inline Json separator_json(Presentation const& p, CayleyBall const& ball,
                           SeparatorCertificate const& c) {
  return Json{{"radius", ball.radius()},
              {"a", p.print(vertex_word(ball, c.a))},
              {"b", p.print(vertex_word(ball, c.b))},
              {"P", vertex_words(p, ball, c.p)},
              {"size", c.p.size()},
              {"separates", c.separates},
              {"inclusion_minimal", c.inclusion_minimal},
              {"diameter_in_ball", c.diameter_in_ball},
              {"cut_is_minimum", c.cut_is_minimum}};
}

inline Json midpoint_json(Presentation const& p, CayleyBall const& ball, Midpoint const& m) {
  Json out{{"vertex", p.print(vertex_word(ball, m.u))}};
  if (m.on_edge()) {
    out["edge_to"] = p.print(vertex_word(ball, *m.v));
  }
  return out;
}

inline Json family_json(Presentation const& p, CayleyBall const& ball,
                        SeparatingFamily const& f) {
  Json entries = Json::array();
  for (auto const& e : f.entries) {
    Json j{{"target", p.print(vertex_word(ball, e.target))},
           {"distance", e.distance},
           {"midpoint", midpoint_json(p, ball, e.midpoint)},
           {"v_x", p.print(vertex_word(ball, e.v_x))},
           {"raw_size", e.raw.size()},
           {"raw_diameter", e.raw_diameter},
           {"gap", e.gap}};
    if (e.gap) {
      j["gap_reason"] = e.gap_reason;
    } else {
      j["P"] = vertex_words(p, ball, e.shrunk);
      j["diameter"] = e.diameter;
      j["midpoint_offset"] = e.midpoint_offset.to_string();
    }
    entries.push_back(std::move(j));
  }
  return Json{{"radius", ball.radius()},
              {"delta", f.delta.to_string()},
              {"max_target_distance", f.max_target_distance},
              {"targets", f.entries.size()},
              {"gaps", f.gaps},
              {"family_diameter", f.family_diameter},
              {"raw_family_diameter", f.raw_family_diameter},
              {"k", f.k.to_string()},
              {"entries", std::move(entries)}};
}

inline Json bp_json(Presentation const& p, CayleyBall const& ball, BpEstimate const& est) {
  Json pairs = Json::array();
  for (auto const& q : est.pairs) {
    pairs.push_back(Json{{"x", p.print(vertex_word(ball, q.x))},
                         {"y", p.print(vertex_word(ball, q.y))},
                         {"distance", q.distance},
                         {"midpoint", midpoint_json(p, ball, q.midpoint)},
                         {"delta_pair", q.delta_pair.to_string()}});
  }
  return Json{{"radius", ball.radius()},
              {"value", est.value.to_string()},
              {"pairs", std::move(pairs)}};
}

inline Json delta_json(Presentation const& p, CayleyBall const& ball,
                       DeltaEstimate const& d) {
  Json w = Json::array();
  for (Vertex v : d.witnesses) {
    w.push_back(p.print(vertex_word(ball, v)));
  }
  return Json{{"radius", ball.radius()},
              {"method", to_string(d.method)},
              {"value", d.value.to_string()},
              {"witnesses", std::move(w)},
              {"examined", d.examined},
              {"sampled", d.sampled},
              {"clamped", d.clamped}};
}

inline Json filling_json(std::vector<FillingMove> const& f) {
  Json out = Json::array();
  for (auto const& m : f) {
    out.push_back(Json{{"position", m.position},
                       {"relator", m.relator},
                       {"shift", m.shift},
                       {"sign", m.sign}});
  }
  return out;
}

inline Json area_json(Presentation const& p, AreaResult const& a) {
  Json out{{"word", p.print(a.word)}, {"status", to_string(a.status)}};
  out["area"] = a.area ? Json(*a.area) : Json(nullptr);
  out["lower_bound"] = a.lower_bound;
  out["exact"] = a.exact;
  out["filling"] = filling_json(a.filling);
  out["caps"] = Json{{"len_cap", a.len_cap},
                     {"area_cap", a.area_cap},
                     {"state_cap", a.state_cap},
                     {"len_pruned", a.len_pruned}};
  out["states"] = a.states;
  return out;
}

inline Json caps_json(AreaCaps const& c) {
  Json out{{"area_cap", c.area_cap}, {"len_slack", c.len_slack}, {"state_cap", c.state_cap}};
  out["len_cap"] = c.len_cap ? Json(*c.len_cap) : Json("auto");
  return out;
}

inline Json dehn_json(Presentation const& p, DehnProfile const& prof) {
  Json values = Json::array();
  for (auto const& v : prof.values) {
    Json w = Json::array();
    for (auto const& x : v.witnesses) {
      w.push_back(p.print(x));
    }
    values.push_back(Json{{"n", v.n}, {"value", v.value}, {"exact", v.exact},
                          {"witnesses", std::move(w)}});
  }
  return Json{{"caps", caps_json(prof.caps)},
              {"words_enumerated", prof.words_enumerated},
              {"trivial_words", prof.trivial_words},
              {"classes", prof.classes},
              {"values", std::move(values)}};
}

inline Json dehn_bound_json(DehnBoundReport const& r) {
  Json rows = Json::array();
  for (auto const& row : r.rows) {
    rows.push_back(Json{{"n", row.n},
                        {"dehn", row.dehn},
                        {"bound", row.bound},
                        {"margin", row.margin},
                        {"exact", row.exact},
                        {"holds", row.holds}});
  }
  return Json{{"k", r.k},
              {"c", r.c},
              {"c_exact", r.c_exact},
              {"status", to_string(r.status)},
              {"rows", std::move(rows)}};
}

inline Json word_report_json(Presentation const& p, Word const& w, WordReport const& r) {
  Json out{{"word", p.print(w)},
           {"reduced", p.print(free_reduce(w))},
           {"decision", to_string(r.decision)},
           {"method", r.method},
           {"area_cap", r.area_cap},
           {"len_cap", r.len_cap}};
  if (r.search) {
    out["search"] = area_json(p, *r.search);
  }
  return out;
}

}  // namespace gchord
