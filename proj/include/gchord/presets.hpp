#pragma once

// Built-in presentations, and resolution of a `--group` argument to either
// a preset or a presentation file.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "words.hpp"

namespace gchord {

inline std::vector<std::string> preset_names() {
  return {"f2", "z2", "z3", "zxz4", "bs12", "bs13", "bs1n:<n>"};
}

// Presentation text of a preset, or an empty string if the name is unknown.
inline std::string preset_text(std::string const& name) {
  if (name == "f2") {
    return "group f2\ngens a b\nbackend free\n";
  }
  if (name == "z2") {
    return "group z2\ngens a b\nrel abAB\nbackend abelian 2\n";
  }
  if (name == "z3") {
    return "group z3\ngens a b c\nrel abAB\nrel acAC\nrel bcBC\nbackend abelian 3\n";
  }
  if (name == "zxz4") {
    return "group zxz4\ngens a b\nrel abAB\nrel bbbb\nbackend product_cyclic 1 4\n";
  }
  if (name == "bs12") {
    return "group bs12\ngens a b\nrel baBAA\nbackend bs 1 2\n";
  }
  if (name == "bs13") {
    return "group bs13\ngens a b\nrel baBAAA\nbackend bs 1 3\n";
  }
  if (name.rfind("bs1n:", 0) == 0) {
    std::string arg = name.substr(5);
    std::int64_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoll(arg, &used);
      if (used != arg.size()) {
        n = 0;
      }
    } catch (std::logic_error const&) {
      n = 0;
    }
    if (n == 0) {
      throw ParseError("preset bs1n:<n> needs a nonzero integer n, got '" + arg + "'");
    }
    // b a b^-1 = a^n
    std::ostringstream os;
    os << "group " << name << "\ngens a b\nrel baBa^" << -n << "\nbackend bs 1 " << n
       << "\n";
    return os.str();
  }
  return {};
}

inline bool is_preset(std::string const& name) {
  return name.rfind("bs1n:", 0) == 0 || !preset_text(name).empty();
}

inline Presentation preset(std::string const& name) {
  auto text = preset_text(name);
  if (text.empty()) {
    throw Error("unknown preset '" + name + "'");
  }
  return parse_presentation(text);
}

inline std::string read_file(std::filesystem::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open '" + path.string() + "'");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// A preset name, or a path to a presentation file (finite_table paths
// inside it resolve against the file's directory).
inline Presentation load_group(std::string const& spec) {
  if (is_preset(spec)) {
    return preset(spec);
  }
  std::filesystem::path path(spec);
  if (!std::filesystem::exists(path)) {
    throw Error("'" + spec + "' is neither a preset (" + [] {
      std::string s;
      for (auto const& n : preset_names()) {
        s += (s.empty() ? "" : ", ") + n;
      }
      return s;
    }() + ") nor an existing presentation file");
  }
  auto dir = std::filesystem::absolute(path).parent_path();
  return parse_presentation(read_file(path), dir);
}

}  // namespace gchord
