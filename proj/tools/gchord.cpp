// gchord: certificates for chordality, separators and Dehn functions on
// finite balls of Cayley graphs.
//
// Exit codes: 0 verified or decided, 2 counterexample or nontrivial,
// 3 resource cap exceeded, 1 usage error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gchord/gchord.hpp"

using namespace gchord;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNegative = 2;
constexpr int kExitResource = 3;

struct Outcome {
  Json result;
  int exit = kExitOk;
  std::string dot;
};

using Runner = std::function<Outcome(Presentation const&, Json const&, unsigned)>;

CayleyBall ball_for(Presentation const& p, int radius) {
  return build_ball(make_oracle(p), radius, vertex_cap_from_env());
}

std::optional<int> opt_int(Json const& j, char const* key) {
  if (!j.contains(key) || j[key].is_null()) {
    return std::nullopt;
  }
  return j[key].get<int>();
}

AreaCaps caps_from(Json const& params) {
  AreaCaps caps;
  if (auto v = opt_int(params, "len_cap")) {
    caps.len_cap = static_cast<std::size_t>(*v);
  }
  caps.area_cap = params.value("area_cap", caps.area_cap);
  caps.len_slack = params.value("len_slack", caps.len_slack);
  caps.state_cap = params.value("state_cap", caps.state_cap);
  return caps;
}

std::vector<std::string> split(std::string const& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) {
    out.push_back(cur);
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////
// Commands
////////////////////////////////////////////////////////////////////////////

Outcome run_ball(Presentation const& p, Json const& params, unsigned) {
  auto ball = ball_for(p, params["radius"].get<int>());
  return {ball_json(p, ball), kExitOk, ball_dot(p, ball)};
}

Outcome run_chordal(Presentation const& p, Json const& params, unsigned jobs) {
  auto ball = ball_for(p, params["radius"].get<int>());
  int k = params["k"].get<int>();
  int lmax = params["lmax"].get<int>();
  auto m = parse_length_bound(params["m"].get<std::string>());
  ChordalityReport r;
  if (auto i0 = opt_int(params, "i0")) {
    r = check_ikm_chordal(ball, *i0, k, m, lmax, jobs);
  } else if (auto eps = opt_int(params, "eps")) {
    r = check_densely_chordal(ball, *eps, k, m, lmax, jobs);
  } else {
    r = check_km_chordal(ball, k, m, lmax, jobs);
  }
  int code = r.status == ChordalStatus::verified_up_to_bound ? kExitOk : kExitNegative;
  return {chordal_json(p, r), code, {}};
}

std::string cycle_dot(Presentation const& p, CayleyBall const& ball, Cycle const& c) {
  std::ostringstream os;
  os << "graph \"" << p.print(c.word) << "\" {\n";
  for (std::size_t t = 0; t < c.length(); ++t) {
    os << "  " << c.vertices[t] << " [label=\"" << ball.format(c.vertices[t]) << "\"];\n";
  }
  for (std::size_t t = 0; t < c.length(); ++t) {
    os << "  " << c.vertices[t] << " -- " << c.vertices[t + 1] << " [label=\""
       << letter_text(p, c.word.letters[t]) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

Outcome run_gamma_n(Presentation const& p, Json const& params, unsigned) {
  int N = params["N"].get<int>();
  auto ball = ball_for(p, params["radius"].get<int>());
  auto cycle = bs_gamma_N(ball, N);
  Json vertices = Json::array();
  for (std::size_t t = 0; t < cycle.length(); ++t) {
    vertices.push_back(ball.format(cycle.vertices[t]));
  }
  Json out{{"N", N},
           {"word", p.print(cycle.word)},
           {"length", cycle.length()},
           {"radius", ball.radius()},
           {"max_dist0", max_dist0(ball, cycle)},
           {"vertices", std::move(vertices)}};
  int code = kExitOk;
  if (params["verify"].get<bool>()) {
    auto cuts = find_shortcuts(cycle, ball, LengthBound::infinite(), false);
    Json sc = Json::array();
    for (auto const& s : cuts) {
      sc.push_back(shortcut_json(p, s));
    }
    out["shortcuts"] = std::move(sc);
    out["status"] = cuts.empty() ? "no shortcuts" : "shortcuts found";
    code = cuts.empty() ? kExitOk : kExitNegative;
  } else {
    out["status"] = "not checked";
  }
  return {out, code, cycle_dot(p, ball, cycle)};
}

Outcome run_separator(Presentation const& p, Json const& params, unsigned jobs) {
  auto ball = ball_for(p, params["radius"].get<int>());
  Vertex a = ball.at(p.word(params["a"].get<std::string>()));
  Vertex b = ball.at(p.word(params["b"].get<std::string>()));
  SeparatorCertificate cert;
  std::string mode;
  if (params["min_cut"].get<bool>()) {
    mode = "min_cut";
    cert = min_vertex_cut(ball, a, b, jobs);
  } else {
    mode = "given";
    VertexSet set;
    for (auto const& w : params["set"]) {
      set.push_back(ball.at(p.word(w.get<std::string>())));
    }
    cert = certify_separator(ball, set, a, b, jobs);
  }
  Json out{{"mode", mode}};
  out.update(separator_json(p, ball, cert));
  int code = cert.separates && cert.inclusion_minimal ? kExitOk : kExitNegative;
  return {out, code, {}};
}

std::vector<std::pair<Vertex, Vertex>> parse_pairs(Presentation const& p,
                                                   CayleyBall const& ball,
                                                   std::string const& spec) {
  if (spec.rfind("all-opposite:", 0) == 0) {
    return opposite_pairs(ball, std::stoi(spec.substr(13)));
  }
  std::vector<std::pair<Vertex, Vertex>> out;
  for (auto const& item : split(spec, ';')) {
    auto ends = split(item, ',');
    if (ends.size() != 2) {
      throw ParseError("pair '" + item + "' must be two words separated by ','");
    }
    out.emplace_back(ball.at(p.word(ends[0])), ball.at(p.word(ends[1])));
  }
  return out;
}

Outcome run_bp(Presentation const& p, Json const& params, unsigned jobs) {
  auto ball = ball_for(p, params["radius"].get<int>());
  auto pairs = parse_pairs(p, ball, params["pairs"].get<std::string>());
  Json out{{"pairs_spec", params["pairs"]}};
  out.update(bp_json(p, ball, estimate_bp(ball, pairs, jobs)));
  return {out, kExitOk, {}};
}

Outcome run_family(Presentation const& p, Json const& params, unsigned jobs) {
  auto ball = ball_for(p, params["radius"].get<int>());
  auto fam = build_separating_family(ball, parse_rational(params["delta"].get<std::string>()),
                                     jobs);
  return {family_json(p, ball, fam), kExitOk, {}};
}

Outcome run_delta(Presentation const& p, Json const& params, unsigned jobs) {
  auto ball = ball_for(p, params["radius"].get<int>());
  auto method = params["method"].get<std::string>() == "rips" ? DeltaMethod::rips
                                                              : DeltaMethod::four_point;
  std::optional<std::uint64_t> sample;
  if (auto s = opt_int(params, "sample")) {
    sample = static_cast<std::uint64_t>(*s);
  }
  return {delta_json(p, ball, delta(ball, method, sample, jobs)), kExitOk, {}};
}

Outcome run_area(Presentation const& p, Json const& params, unsigned) {
  auto oracle = make_oracle(p);
  Word w = p.word(params["word"].get<std::string>());
  if (!oracle->is_identity(w)) {
    return {Json{{"word", p.print(w)}, {"status", "nontrivial"}}, kExitNegative, {}};
  }
  auto res = area(p, *oracle, w, caps_from(params));
  return {area_json(p, res), res.status == SearchStatus::found ? kExitOk : kExitResource, {}};
}

Outcome run_dehn(Presentation const& p, Json const& params, unsigned jobs) {
  auto oracle = make_oracle(p);
  int n = params["n"].get<int>();
  auto caps = caps_from(params);
  if (auto k = opt_int(params, "k")) {
    auto rep = check_dehn_bound(p, *oracle, *k, n, caps, jobs);
    int code = rep.status == DehnBoundStatus::holds      ? kExitOk
               : rep.status == DehnBoundStatus::violated ? kExitNegative
                                                         : kExitResource;
    return {Json{{"bound", dehn_bound_json(rep)}, {"profile", dehn_json(p, rep.profile)}},
            code, {}};
  }
  auto prof = dehn_profile(p, *oracle, n, caps, jobs);
  bool exact = std::all_of(prof.values.begin(), prof.values.end(),
                           [](DehnValue const& v) { return v.exact; });
  return {Json{{"profile", dehn_json(p, prof)}}, exact ? kExitOk : kExitResource, {}};
}

Outcome run_word(Presentation const& p, Json const& params, unsigned) {
  Word w = p.word(params["word"].get<std::string>());
  auto rep = solve_word_bounded(p, params["k"].get<int>(), params["c"].get<std::uint64_t>(), w,
                                params["len_slack"].get<int>(),
                                params["state_cap"].get<std::size_t>());
  int code = rep.decision == WordDecision::trivial      ? kExitOk
             : rep.decision == WordDecision::nontrivial ? kExitNegative
                                                        : kExitResource;
  return {word_report_json(p, w, rep), code, {}};
}

Presentation zn_presentation(int dim) {
  if (dim < 1 || dim > 6) {
    throw Error("--dim must be between 1 and 6");
  }
  std::ostringstream os;
  os << "group z" << dim << "\ngens";
  for (int i = 0; i < dim; ++i) {
    os << ' ' << static_cast<char>('a' + i);
  }
  os << "\n";
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      char x = static_cast<char>('a' + i);
      char y = static_cast<char>('a' + j);
      os << "rel " << x << y << static_cast<char>(x - 32) << static_cast<char>(y - 32) << "\n";
    }
  }
  os << "backend abelian " << dim << "\n";
  return parse_presentation(os.str());
}

// Never exits 2: a failing instance is reported, not treated as an error.
Outcome run_experiment_zn(Presentation const& p, Json const& params, unsigned jobs) {
  auto ball = ball_for(p, params["radius"].get<int>());
  int k = params["k"].get<int>();
  auto r = check_km_chordal(ball, k, LengthBound::infinite(), params["lmax"].get<int>(), jobs);
  Json out{{"dim", params["dim"]},
           {"conjectured_k", (1 << params["dim"].get<int>()) + 1},
           {"k", k},
           {"consistent_with_conjecture", r.status == ChordalStatus::verified_up_to_bound},
           {"report", chordal_json(p, r)}};
  return {out, kExitOk, {}};
}

std::map<std::string, Runner> const& runners() {
  static std::map<std::string, Runner> const table{
      {"ball", run_ball},           {"chordal", run_chordal},
      {"gamma-n", run_gamma_n},     {"separator", run_separator},
      {"bp", run_bp},               {"family", run_family},
      {"delta", run_delta},         {"area", run_area},
      {"dehn", run_dehn},           {"word", run_word},
      {"experiment-zn", run_experiment_zn}};
  return table;
}

////////////////////////////////////////////////////////////////////////////
// Output
////////////////////////////////////////////////////////////////////////////

void write_text(std::string const& path, std::string const& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write '" + path + "'");
  }
  out << text;
}

Json certificate(std::string const& command, Presentation const& p, Json const& params,
                 Json const& result) {
  return Json{{"tool", "gchord"},
              {"version", kVersion},
              {"command", command},
              {"group", group_json(p)},
              {"params", params},
              {"result", result}};
}

struct Common {
  unsigned jobs = default_jobs();
  std::string out;
  std::string dot;
  std::string manifest;
};

int execute(std::string const& command, Presentation const& p, Json const& params,
            Common const& common, std::vector<std::string> const& argv) {
  auto start = std::chrono::steady_clock::now();
  auto outcome = runners().at(command)(p, params, common.jobs);
  auto cert = certificate(command, p, params, outcome.result);
  write_text(common.out, cert.dump(2) + "\n");
  if (!common.dot.empty()) {
    if (outcome.dot.empty()) {
      throw Error("--dot is not supported by '" + command + "'");
    }
    write_text(common.dot, outcome.dot);
  }
  std::string manifest_path = common.manifest;
  if (manifest_path.empty() && !common.out.empty() && common.out != "-") {
    manifest_path = common.out + ".manifest.json";
  }
  if (!manifest_path.empty()) {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json m{{"tool", "gchord"},
           {"version", kVersion},
           {"command_line", argv},
           {"command", command},
           {"group", {{"name", p.name}, {"hash", fnv1a_hex(to_text(p))}}},
           {"params", params},
           {"jobs", common.jobs},
           {"vertex_cap", vertex_cap_from_env()},
           {"determinism", "certificate bytes depend only on group and params, not on jobs"},
           {"exit_code", outcome.exit},
           {"wall_time_seconds", secs}};
    write_text(manifest_path, m.dump(2) + "\n");
  }
  return outcome.exit;
}

// Recomputes a certificate from its embedded group and parameters against
// a freshly built ball and compares the results.
int verify(std::string const& path, unsigned jobs) {
  auto cert = Json::parse(read_file(path));
  for (char const* key : {"command", "group", "params", "result"}) {
    if (!cert.contains(key)) {
      throw ParseError("'" + path + "' is not a gchord certificate (missing '" +
                       std::string(key) + "')");
    }
  }
  auto command = cert["command"].get<std::string>();
  if (!runners().count(command)) {
    throw ParseError("unknown command '" + command + "' in certificate");
  }
  auto text = cert["group"]["presentation"].get<std::string>();
  bool hash_ok = fnv1a_hex(text) == cert["group"]["hash"].get<std::string>();
  auto p = parse_presentation(text);
  auto outcome = runners().at(command)(p, cert["params"], jobs);
  bool same = outcome.result.dump() == cert["result"].dump();
  Json report{{"certificate", path},
              {"command", command},
              {"group_hash_matches", hash_ok},
              {"result_matches", same},
              {"recomputed_exit_code", outcome.exit},
              {"status", hash_ok && same ? "verified" : "mismatch"}};
  std::cout << report.dump(2) << "\n";
  return hash_ok && same ? kExitOk : kExitNegative;
}

void add_common(CLI::App* sub, Common& common, bool dot) {
  sub->add_option("--jobs,-j", common.jobs, "Worker threads (output does not depend on it)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out,-o", common.out, "Certificate path (default: stdout)");
  sub->add_option("--manifest", common.manifest,
                  "Run manifest path (default: <out>.manifest.json when --out is set)");
  if (dot) {
    sub->add_option("--dot", common.dot, "Also write a DOT rendering");
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"Chordality, separator and Dehn function certificates on balls of Cayley graphs"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common common;
  std::string group;
  int radius = 0;
  Json params = Json::object();

  auto add_group = [&](CLI::App* sub) {
    sub->add_option("--group,-g,--preset", group,
                    "Preset (f2, z2, z3, zxz4, bs12, bs13, bs1n:<n>) or presentation file")
        ->required();
  };

  // ball
  auto* ball = app.add_subcommand("ball", "Build a ball and export it as JSON / DOT");
  add_group(ball);
  ball->add_option("--radius,-R", radius, "Ball radius")->required()->check(CLI::PositiveNumber);
  add_common(ball, common, true);

  // chordal
  int k = 0;
  int lmax = 0;
  std::string m = "inf";
  std::optional<int> i0;
  std::optional<int> eps;
  auto* chordal = app.add_subcommand("chordal", "Check (k,m)-, (i0,k,m)- or eps-dense chordality");
  add_group(chordal);
  chordal->add_option("-k", k, "Minimum cycle length that needs a shortcut")->required();
  chordal->add_option("-m", m, "Maximum shortcut length, or 'inf'")->capture_default_str();
  auto* i0_opt = chordal->add_option("--i0", i0, "Cyclic gap bound on shortcut starts");
  chordal->add_option("--eps", eps, "Density of strict shortcut endpoints")->excludes(i0_opt);
  chordal->add_option("--lmax", lmax, "Longest cycle to enumerate")->required();
  chordal->add_option("--radius,-R", radius, "Ball radius (default: smallest sound radius)");
  add_common(chordal, common, false);

  // gamma-n
  int n = 0;
  int big_n = 0;
  bool verify_flag = false;
  auto* gamma = app.add_subcommand("gamma-n", "The shortcut-free cycle gamma_N of BS(1,n)");
  gamma->add_option("--n", n, "BS(1,n) parameter, |n| >= 2")->required();
  gamma->add_option("--N", big_n, "Cycle index N >= 1")->required();
  gamma->add_flag("--verify", verify_flag, "Search for shortcuts");
  gamma->add_option("--radius,-R", radius, "Ball radius (default: 4N + 4)");
  add_common(gamma, common, true);

  // separator
  std::string a_word;
  std::string b_word;
  bool min_cut = false;
  std::string set_words;
  auto* sep = app.add_subcommand("separator", "Certify or compute a vertex a-b separator");
  add_group(sep);
  sep->add_option("--a", a_word, "First vertex as a word")->required();
  sep->add_option("--b", b_word, "Second vertex as a word")->required();
  auto* mc = sep->add_flag("--min-cut", min_cut, "Compute a minimum vertex cut");
  sep->add_option("--set", set_words, "Comma-separated words of a candidate separator")
      ->excludes(mc);
  sep->add_option("--radius,-R", radius, "Ball radius (default: max(|a|,|b|) + 2)");
  add_common(sep, common, false);

  // bp
  std::string pairs;
  auto* bp = app.add_subcommand("bp", "Estimate the bottleneck constant over given pairs");
  add_group(bp);
  bp->add_option("--pairs", pairs, "'all-opposite:<r>' or 'x1,y1;x2,y2;...'")->required();
  bp->add_option("--radius,-R", radius, "Ball radius")->required();
  add_common(bp, common, false);

  // family
  std::string delta_text;
  auto* fam = app.add_subcommand("family", "Build a separating family from midpoint balls");
  add_group(fam);
  fam->add_option("--delta", delta_text, "Neighbourhood parameter (integer or p/q)")->required();
  fam->add_option("--radius,-R", radius, "Ball radius")->required();
  add_common(fam, common, false);

  // delta
  std::string method = "four_point";
  std::optional<int> sample;
  auto* del = app.add_subcommand("delta", "Estimate the hyperbolicity constant of a ball");
  add_group(del);
  del->add_option("--radius,-R", radius, "Ball radius")->required();
  del->add_option("--method", method, "four_point or rips")
      ->check(CLI::IsMember({"four_point", "rips"}))
      ->capture_default_str();
  del->add_option("--sample", sample, "Sample size (fixed seed) instead of a full scan");
  add_common(del, common, false);

  // area
  std::string word;
  std::optional<int> len_cap;
  int area_cap = AreaCaps{}.area_cap;
  int len_slack = AreaCaps{}.len_slack;
  std::size_t state_cap = AreaCaps{}.state_cap;
  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--len-cap", len_cap, "Longest intermediate word (default: derived)");
    sub->add_option("--area-cap", area_cap, "Largest area searched")->capture_default_str();
    sub->add_option("--len-slack", len_slack, "Slack added to the derived length cap")
        ->capture_default_str();
    sub->add_option("--state-cap", state_cap, "Most search states")->capture_default_str();
  };
  auto* ar = app.add_subcommand("area", "Area of a trivial word with a filling");
  add_group(ar);
  ar->add_option("--word,-w", word, "The word")->required();
  add_caps(ar);
  add_common(ar, common, false);

  // dehn
  std::optional<int> bound_k;
  auto* dehn = app.add_subcommand("dehn", "Dehn function up to n, optionally against c*2^(n-k)");
  add_group(dehn);
  dehn->add_option("--n", n, "Largest word length")->required();
  dehn->add_option("--k", bound_k, "Check Dehn(n) <= Dehn(k) * 2^(n-k)");
  add_caps(dehn);
  add_common(dehn, common, false);

  // word
  std::uint64_t c = 0;
  auto* wp = app.add_subcommand("word", "Decide a word given a certified (k, c)");
  add_group(wp);
  wp->add_option("--word,-w", word, "The word")->required();
  wp->add_option("--k", k, "Chordality constant")->required();
  wp->add_option("--c", c, "Dehn(k)")->required();
  wp->add_option("--len-slack", len_slack, "Slack added to the length cap")->capture_default_str();
  wp->add_option("--state-cap", state_cap, "Most search states")->capture_default_str();
  add_common(wp, common, false);

  // experiment-zn
  int dim = 2;
  std::optional<int> zk;
  std::optional<int> zlmax;
  auto* zn = app.add_subcommand("experiment-zn", "Test Z^n for (2^n+1)-chordality at bounded scale");
  zn->add_option("--dim", dim, "n")->capture_default_str();
  zn->add_option("-k", zk, "k (default 2^n + 1)");
  zn->add_option("--lmax", zlmax, "Longest cycle (default k + 1)");
  zn->add_option("--radius,-R", radius, "Ball radius (default: smallest sound radius)");
  add_common(zn, common, false);

  // verify
  std::string cert_path;
  auto* ver = app.add_subcommand("verify", "Re-check a certificate against a fresh computation");
  ver->add_option("certificate", cert_path, "Certificate JSON")->required();
  ver->add_option("--jobs,-j", common.jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    auto* sub = app.get_subcommands().front();
    std::string command = sub->get_name();
    if (command == "verify") {
      return verify(cert_path, common.jobs);
    }
    Presentation p;
    if (command == "gamma-n") {
      p = preset("bs1n:" + std::to_string(n));
      params = {{"n", n}, {"N", big_n}, {"verify", verify_flag},
                {"radius", radius > 0 ? radius : bs_gamma_radius(big_n)}};
    } else if (command == "experiment-zn") {
      p = zn_presentation(dim);
      int kk = zk.value_or((1 << dim) + 1);
      int ll = zlmax.value_or(kk + 1);
      params = {{"dim", dim}, {"k", kk}, {"lmax", ll},
                {"radius", radius > 0 ? radius : required_radius(ll, LengthBound::infinite())}};
    } else {
      p = load_group(group);
    }
    if (command == "ball" || command == "bp" || command == "family") {
      params["radius"] = radius;
    }
    if (command == "bp") {
      params["pairs"] = pairs;
    } else if (command == "family") {
      params["delta"] = parse_rational(delta_text).to_string();
    } else if (command == "chordal") {
      auto mb = parse_length_bound(m);
      params = {{"k", k}, {"m", mb.to_string()}, {"lmax", lmax}};
      params["i0"] = i0 ? Json(*i0) : Json(nullptr);
      params["eps"] = eps ? Json(*eps) : Json(nullptr);
      params["radius"] = radius > 0 ? radius : required_radius(lmax, mb);
    } else if (command == "separator") {
      if (!min_cut && set_words.empty()) {
        throw ParseError("separator needs --min-cut or --set");
      }
      Json set = Json::array();
      for (auto const& w : split(set_words, ',')) {
        set.push_back(w);
      }
      int def = static_cast<int>(std::max(p.word(a_word).size(), p.word(b_word).size())) + 2;
      params = {{"a", a_word}, {"b", b_word}, {"min_cut", min_cut},
                {"set", min_cut ? Json(nullptr) : set}, {"radius", radius > 0 ? radius : def}};
    } else if (command == "delta") {
      params = {{"radius", radius}, {"method", method}};
      params["sample"] = sample ? Json(*sample) : Json(nullptr);
    } else if (command == "area" || command == "dehn") {
      if (command == "area") {
        params["word"] = word;
      } else {
        params["n"] = n;
        params["k"] = bound_k ? Json(*bound_k) : Json(nullptr);
      }
      params["len_cap"] = len_cap ? Json(*len_cap) : Json(nullptr);
      params["area_cap"] = area_cap;
      params["len_slack"] = len_slack;
      params["state_cap"] = state_cap;
    } else if (command == "word") {
      params = {{"word", word}, {"k", k}, {"c", c}, {"len_slack", len_slack},
                {"state_cap", state_cap}};
    }
    return execute(command, p, params, common, args);
  } catch (CapExceeded const& e) {
    std::cerr << "gchord: resource cap exceeded: " << e.what() << "\n";
    return kExitResource;
  } catch (RadiusError const& e) {
    std::cerr << "gchord: " << e.what() << " (pass a larger --radius)\n";
    return kExitUsage;
  } catch (std::exception const& e) {
    std::cerr << "gchord: " << e.what() << "\n";
    return kExitUsage;
  }
}
