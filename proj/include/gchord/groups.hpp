#pragma once

// Normal-form oracles for the concrete group families, and the geometric
// functions of BS(1, n) (height, horizontal fibers, horizontal length).
//
// Every oracle maps a word to a canonical Element: two words are equal in
// the group iff their Elements compare equal. Cayley graphs use right
// multiplication, so the neighbours of g are g·s for s a generator or an
// inverse generator.

#include <compare>
#include <cstdint>
#include <fstream>
#include <functional>
#include <memory>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "backend.hpp"
#include "error.hpp"
#include "words.hpp"

namespace gchord {

using Int128 = __int128;

namespace detail {

inline Int128 checked_add(Int128 x, Int128 y) {
  Int128 r;
  if (__builtin_add_overflow(x, y, &r)) {
    throw CapExceeded("BS(1,n) coordinate overflow");
  }
  return r;
}

inline Int128 checked_mul(Int128 x, Int128 y) {
  Int128 r;
  if (__builtin_mul_overflow(x, y, &r)) {
    throw CapExceeded("BS(1,n) coordinate overflow");
  }
  return r;
}

inline Int128 checked_pow(Int128 base, std::int64_t e) {
  Int128 r = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    r = checked_mul(r, base);
  }
  return r;
}

inline std::string to_string(Int128 v) {
  if (v == 0) {
    return "0";
  }
  bool negative = v < 0;
  // Negating the minimum value is avoided by working with negative digits.
  std::string digits;
  while (v != 0) {
    int d = static_cast<int>(v % 10);
    digits.push_back(static_cast<char>('0' + (d < 0 ? -d : d)));
    v /= 10;
  }
  if (negative) {
    digits.push_back('-');
  }
  return {digits.rbegin(), digits.rend()};
}

inline void hash_combine(std::size_t& seed, std::size_t v) noexcept {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

inline std::size_t hash_int128(Int128 v) noexcept {
  auto u = static_cast<unsigned __int128>(v);
  std::size_t seed = static_cast<std::size_t>(u);
  hash_combine(seed, static_cast<std::size_t>(u >> 64));
  return seed;
}

}  // namespace detail

////////////////////////////////////////////////////////////////////////////
// Element types
////////////////////////////////////////////////////////////////////////////

// The affine map x -> n^k x + q of the real line, which is how BS(1, n) acts:
// a is x -> x + 1 and b is x -> n x. The rational q is stored as
// num / |n|^j with j minimal, which makes the encoding canonical.
struct BSElement {
  std::int64_t k = 0;
  Int128 num = 0;
  std::int32_t j = 0;

  friend bool operator==(BSElement const&, BSElement const&) = default;
  friend std::strong_ordering operator<=>(BSElement const& x,
                                          BSElement const& y) noexcept {
    if (auto c = x.k <=> y.k; c != 0) {
      return c;
    }
    if (auto c = x.j <=> y.j; c != 0) {
      return c;
    }
    if (x.num == y.num) {
      return std::strong_ordering::equal;
    }
    return x.num < y.num ? std::strong_ordering::less
                         : std::strong_ordering::greater;
  }
};

// Identifies the horizontal line (a-coset g<a>) through an element of
// BS(1, n): the height together with q reduced modulo n^k Z.
struct FiberId {
  std::int64_t height = 0;
  Int128 num = 0;
  std::int32_t j = 0;

  friend bool operator==(FiberId const&, FiberId const&) = default;
};

struct FreeForm {
  std::vector<Letter> letters;
  friend bool operator==(FreeForm const&, FreeForm const&) = default;
  friend std::strong_ordering operator<=>(FreeForm const& x,
                                          FreeForm const& y) {
    // shortlex, so identity sorts first and ball layers sort naturally
    if (auto c = x.letters.size() <=> y.letters.size(); c != 0) {
      return c;
    }
    return std::lexicographical_compare_three_way(
        x.letters.begin(), x.letters.end(), y.letters.begin(),
        y.letters.end());
  }
};

struct VectorForm {
  std::vector<std::int64_t> coords;
  friend bool operator==(VectorForm const&, VectorForm const&) = default;
  friend auto operator<=>(VectorForm const&, VectorForm const&) = default;
};

struct TableState {
  std::uint32_t state = 0;
  friend auto operator<=>(TableState const&, TableState const&) = default;
};

struct Element {
  std::variant<FreeForm, VectorForm, BSElement, TableState> form;

  friend bool operator==(Element const&, Element const&) = default;
  friend std::strong_ordering operator<=>(Element const& x, Element const& y) {
    if (x.form.index() != y.form.index()) {
      return x.form.index() <=> y.form.index();
    }
    return std::visit(
        [&](auto const& a) -> std::strong_ordering {
          using T = std::decay_t<decltype(a)>;
          return a <=> std::get<T>(y.form);
        },
        x.form);
  }

  BSElement const& bs() const { return std::get<BSElement>(form); }
};

struct ElementHash {
  std::size_t operator()(Element const& e) const noexcept {
    std::size_t seed = e.form.index();
    std::visit(
        [&](auto const& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, FreeForm>) {
            for (Letter x : a.letters) {
              detail::hash_combine(seed, x.code());
            }
          } else if constexpr (std::is_same_v<T, VectorForm>) {
            for (auto c : a.coords) {
              detail::hash_combine(seed, std::hash<std::int64_t>{}(c));
            }
          } else if constexpr (std::is_same_v<T, BSElement>) {
            detail::hash_combine(seed, std::hash<std::int64_t>{}(a.k));
            detail::hash_combine(seed, detail::hash_int128(a.num));
            detail::hash_combine(seed, std::hash<std::int32_t>{}(a.j));
          } else {
            detail::hash_combine(seed, a.state);
          }
        },
        e.form);
    return seed;
  }
};

////////////////////////////////////////////////////////////////////////////
// Oracle interface
////////////////////////////////////////////////////////////////////////////

class GroupOracle {
 public:
  GroupOracle(BackendDescriptor backend, std::size_t generator_count)
      : backend_(std::move(backend)), generator_count_(generator_count) {}
  virtual ~GroupOracle() = default;

  BackendDescriptor const& backend() const noexcept { return backend_; }
  std::size_t generator_count() const noexcept { return generator_count_; }
  std::size_t letter_count() const noexcept { return 2 * generator_count_; }

  virtual Element identity() const = 0;
  // Right multiplication by a single generator or inverse generator.
  virtual Element multiply(Element const& g, Letter s) const = 0;
  virtual Element multiply(Element const& g, Element const& h) const = 0;
  virtual Element inverse(Element const& g) const = 0;
  virtual std::string format(Element const& g) const = 0;

  Element normalize(Word const& w) const {
    Element g = identity();
    for (Letter s : w.letters) {
      check_letter(s);
      g = multiply(g, s);
    }
    return g;
  }

  bool is_identity(Word const& w) const { return normalize(w) == identity(); }

  void check_letter(Letter s) const {
    if (s.generator >= generator_count_) {
      throw Error("letter references generator " +
                  std::to_string(s.generator) + " but the " +
                  backend_.to_string() + " backend has " +
                  std::to_string(generator_count_) + " generator(s)");
    }
  }

 private:
  BackendDescriptor backend_;
  std::size_t generator_count_;
};

using OraclePtr = std::shared_ptr<GroupOracle const>;

inline Element normalize(GroupOracle const& oracle, Word const& w) {
  return oracle.normalize(w);
}

inline bool is_identity(GroupOracle const& oracle, Word const& w) {
  return oracle.is_identity(w);
}

////////////////////////////////////////////////////////////////////////////
// Free groups
////////////////////////////////////////////////////////////////////////////

class FreeOracle final : public GroupOracle {
 public:
  using GroupOracle::GroupOracle;

  Element identity() const override { return {FreeForm{}}; }

  Element multiply(Element const& g, Letter s) const override {
    FreeForm f = std::get<FreeForm>(g.form);
    if (!f.letters.empty() && cancels(f.letters.back(), s)) {
      f.letters.pop_back();
    } else {
      f.letters.push_back(s);
    }
    return {std::move(f)};
  }

  Element multiply(Element const& g, Element const& h) const override {
    Element out = g;
    for (Letter s : std::get<FreeForm>(h.form).letters) {
      out = multiply(out, s);
    }
    return out;
  }

  Element inverse(Element const& g) const override {
    Word w(std::get<FreeForm>(g.form).letters);
    return {FreeForm{gchord::inverse(w).letters}};
  }

  std::string format(Element const& g) const override {
    auto const& ls = std::get<FreeForm>(g.form).letters;
    if (ls.empty()) {
      return "e";
    }
    std::string out;
    for (Letter s : ls) {
      char c = static_cast<char>('a' + s.generator);
      out.push_back(s.sign > 0 ? c : static_cast<char>(c - 'a' + 'A'));
    }
    return out;
  }
};

////////////////////////////////////////////////////////////////////////////
// Z^r and Z^r x Z/m
////////////////////////////////////////////////////////////////////////////

class AbelianOracle final : public GroupOracle {
 public:
  // modulus == 0 means every factor is Z; otherwise the last factor is Z/m.
  AbelianOracle(BackendDescriptor backend, std::size_t generator_count,
                std::int64_t modulus)
      : GroupOracle(std::move(backend), generator_count), modulus_(modulus) {}

  Element identity() const override {
    return {VectorForm{std::vector<std::int64_t>(generator_count(), 0)}};
  }

  Element multiply(Element const& g, Letter s) const override {
    VectorForm v = std::get<VectorForm>(g.form);
    v.coords[s.generator] += s.sign;
    reduce(v);
    return {std::move(v)};
  }

  Element multiply(Element const& g, Element const& h) const override {
    VectorForm v = std::get<VectorForm>(g.form);
    auto const& w = std::get<VectorForm>(h.form);
    for (std::size_t i = 0; i < v.coords.size(); ++i) {
      v.coords[i] += w.coords[i];
    }
    reduce(v);
    return {std::move(v)};
  }

  Element inverse(Element const& g) const override {
    VectorForm v = std::get<VectorForm>(g.form);
    for (auto& c : v.coords) {
      c = -c;
    }
    reduce(v);
    return {std::move(v)};
  }

  std::string format(Element const& g) const override {
    auto const& c = std::get<VectorForm>(g.form).coords;
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
      out += (i == 0 ? "" : ",") + std::to_string(c[i]);
    }
    return out + ")";
  }

  std::int64_t modulus() const noexcept { return modulus_; }

 private:
  void reduce(VectorForm& v) const {
    if (modulus_ != 0) {
      auto& last = v.coords.back();
      last = ((last % modulus_) + modulus_) % modulus_;
    }
  }

  std::int64_t modulus_;
};

////////////////////////////////////////////////////////////////////////////
// BS(1, n)
////////////////////////////////////////////////////////////////////////////

class BSOracle final : public GroupOracle {
 public:
  explicit BSOracle(BackendDescriptor backend)
      : GroupOracle(backend, 2),
        n_(backend.n),
        abs_n_(backend.n < 0 ? -backend.n : backend.n) {}

  std::int64_t n() const noexcept { return n_; }

  Element identity() const override { return {BSElement{}}; }

  Element multiply(Element const& g, Letter s) const override {
    BSElement x = g.bs();
    if (s.generator == 1) {
      x.k += s.sign;
      return {x};
    }
    // g·a^{±1}: x -> n^k (x ± 1) + q, so q moves by ±n^k
    auto [pn, pj] = power_of_n(x.k);
    return {add_q(x, s.sign > 0 ? pn : -pn, pj)};
  }

  Element multiply(Element const& g, Element const& h) const override {
    BSElement const& x = g.bs();
    BSElement const& y = h.bs();
    // x ∘ y : t -> n^{kx}(n^{ky} t + qy) + qx
    auto [pn, pj] = power_of_n(x.k);
    BSElement out = x;
    out.k = x.k + y.k;
    Int128 num = detail::checked_mul(pn, y.num);
    out = add_q(out, num, pj + y.j);
    return {out};
  }

  Element inverse(Element const& g) const override {
    BSElement const& x = g.bs();
    // inverse of t -> n^k t + q is t -> n^{-k} t - n^{-k} q
    auto [pn, pj] = power_of_n(-x.k);
    BSElement out;
    out.k = -x.k;
    return {add_q(out, -detail::checked_mul(pn, x.num), pj + x.j)};
  }

  std::string format(Element const& g) const override {
    BSElement const& x = g.bs();
    std::string q = detail::to_string(x.num);
    if (x.j > 0) {
      q += "/" + detail::to_string(detail::checked_pow(abs_n_, x.j));
    }
    return "(" + std::to_string(x.k) + "," + q + ")";
  }

  // b-exponent sum, i.e. the height in the abelianization.
  static std::int64_t height(Element const& g) { return g.bs().k; }

  FiberId fiber(Element const& g) const {
    BSElement const& x = g.bs();
    // modulus n^k as a fraction M / |n|^jm (sign of n is irrelevant for Z)
    Int128 m = x.k >= 0 ? detail::checked_pow(abs_n_, x.k) : 1;
    std::int32_t jm = x.k >= 0 ? 0 : static_cast<std::int32_t>(-x.k);
    std::int32_t jj = std::max(x.j, jm);
    Int128 num = detail::checked_mul(x.num, detail::checked_pow(abs_n_, jj - x.j));
    Int128 mod = detail::checked_mul(m, detail::checked_pow(abs_n_, jj - jm));
    Int128 r = ((num % mod) + mod) % mod;
    FiberId f{x.k, r, jj};
    while (f.j > 0 && f.num % abs_n_ == 0) {
      f.num /= abs_n_;
      --f.j;
    }
    return f;
  }

  // Same horizontal line: equal heights and x^{-1} y an integer power of a.
  bool fiber_equal(Element const& x, Element const& y) const {
    if (height(x) != height(y)) {
      return false;
    }
    BSElement d = multiply(inverse(x), y).bs();
    return d.k == 0 && d.j == 0;
  }

 private:
  // n^k as num / |n|^j
  std::pair<Int128, std::int32_t> power_of_n(std::int64_t k) const {
    std::int64_t e = k < 0 ? -k : k;
    Int128 sign = (n_ < 0 && e % 2 == 1) ? -1 : 1;
    if (k >= 0) {
      return {sign * detail::checked_pow(abs_n_, e), 0};
    }
    return {sign, static_cast<std::int32_t>(e)};
  }

  // x.q + num / |n|^j, renormalized
  BSElement add_q(BSElement x, Int128 num, std::int32_t j) const {
    std::int32_t jj = std::max(x.j, j);
    Int128 a = detail::checked_mul(x.num, detail::checked_pow(abs_n_, jj - x.j));
    Int128 b = detail::checked_mul(num, detail::checked_pow(abs_n_, jj - j));
    x.num = detail::checked_add(a, b);
    x.j = jj;
    if (abs_n_ > 1) {
      while (x.j > 0 && x.num % abs_n_ == 0) {
        x.num /= abs_n_;
        --x.j;
      }
    } else {
      x.j = 0;
    }
    return x;
  }

  std::int64_t n_;
  std::int64_t abs_n_;
};

inline std::int64_t bs_height(BSElement const& e) noexcept { return e.k; }

inline bool bs_fiber_equal(BSOracle const& oracle, Element const& x,
                           Element const& y) {
  return oracle.fiber_equal(x, y);
}

// Number of a-letters (either sign) in a path word over {a, b}.
inline std::int64_t bs_horizontal_length(Word const& w) {
  std::int64_t h = 0;
  for (Letter s : w.letters) {
    if (s.generator == 0) {
      ++h;
    }
  }
  return h;
}

////////////////////////////////////////////////////////////////////////////
// Finite groups given by a multiplication table
////////////////////////////////////////////////////////////////////////////

// JSON: {"order": N, "generators": [s1, ...], "mul": [[...], ...]} with
// state 0 the identity.
struct MultiplicationTable {
  std::uint32_t order = 0;
  std::vector<std::uint32_t> generators;
  std::vector<std::vector<std::uint32_t>> mul;
  std::vector<std::uint32_t> inverse;

  static MultiplicationTable from_json(nlohmann::json const& j) {
    MultiplicationTable t;
    try {
      t.order = j.at("order").get<std::uint32_t>();
      t.generators = j.at("generators").get<std::vector<std::uint32_t>>();
      t.mul = j.at("mul").get<std::vector<std::vector<std::uint32_t>>>();
    } catch (nlohmann::json::exception const& e) {
      throw Error(std::string("bad multiplication table: ") + e.what());
    }
    t.validate();
    return t;
  }

  static MultiplicationTable load(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error("cannot open multiplication table '" + path + "'");
    }
    nlohmann::json j;
    try {
      in >> j;
    } catch (nlohmann::json::exception const& e) {
      throw Error("cannot parse '" + path + "': " + e.what());
    }
    return from_json(j);
  }

  void validate() {
    if (order == 0 || mul.size() != order) {
      throw Error("multiplication table must be order x order");
    }
    for (auto const& row : mul) {
      if (row.size() != order) {
        throw Error("multiplication table must be order x order");
      }
      for (auto v : row) {
        if (v >= order) {
          throw Error("multiplication table entry out of range");
        }
      }
    }
    for (std::uint32_t x = 0; x < order; ++x) {
      if (mul[0][x] != x || mul[x][0] != x) {
        throw Error("state 0 is not the identity");
      }
    }
    inverse.assign(order, order);
    for (std::uint32_t x = 0; x < order; ++x) {
      for (std::uint32_t y = 0; y < order; ++y) {
        if (mul[x][y] == 0) {
          inverse[x] = y;
          break;
        }
      }
      if (inverse[x] == order || mul[inverse[x]][x] != 0) {
        throw Error("multiplication table has no two-sided inverses");
      }
    }
    if (order <= 256) {
      for (std::uint32_t x = 0; x < order; ++x) {
        for (std::uint32_t y = 0; y < order; ++y) {
          for (std::uint32_t z = 0; z < order; ++z) {
            if (mul[mul[x][y]][z] != mul[x][mul[y][z]]) {
              throw Error("multiplication table is not associative");
            }
          }
        }
      }
    }
    for (auto g : generators) {
      if (g >= order || g == 0) {
        throw Error("generators must be non-identity states");
      }
    }
  }
};

class TableOracle final : public GroupOracle {
 public:
  TableOracle(BackendDescriptor backend, MultiplicationTable table)
      : GroupOracle(std::move(backend), table.generators.size()),
        table_(std::move(table)) {}

  Element identity() const override { return {TableState{0}}; }

  Element multiply(Element const& g, Letter s) const override {
    auto x = std::get<TableState>(g.form).state;
    auto gen = table_.generators[s.generator];
    return {TableState{table_.mul[x][s.sign > 0 ? gen : table_.inverse[gen]]}};
  }

  Element multiply(Element const& g, Element const& h) const override {
    return {TableState{table_.mul[std::get<TableState>(g.form).state]
                                 [std::get<TableState>(h.form).state]}};
  }

  Element inverse(Element const& g) const override {
    return {TableState{table_.inverse[std::get<TableState>(g.form).state]}};
  }

  std::string format(Element const& g) const override {
    return "#" + std::to_string(std::get<TableState>(g.form).state);
  }

 private:
  MultiplicationTable table_;
};

////////////////////////////////////////////////////////////////////////////
// Construction
////////////////////////////////////////////////////////////////////////////

inline OraclePtr make_oracle(BackendDescriptor const& backend,
                             std::size_t generator_count) {
  backend.validate();
  auto mismatch = [&](std::size_t expected) {
    if (generator_count != expected) {
      throw Error("backend " + backend.to_string() + " expects " +
                  std::to_string(expected) + " generator(s), presentation has " +
                  std::to_string(generator_count));
    }
  };
  switch (backend.kind) {
    case BackendKind::free:
      if (generator_count == 0) {
        throw Error("free backend needs at least one generator");
      }
      return std::make_shared<FreeOracle>(backend, generator_count);
    case BackendKind::abelian:
      mismatch(static_cast<std::size_t>(backend.rank));
      return std::make_shared<AbelianOracle>(backend, generator_count, 0);
    case BackendKind::product_cyclic:
      mismatch(static_cast<std::size_t>(backend.rank) + 1);
      return std::make_shared<AbelianOracle>(backend, generator_count,
                                             backend.modulus);
    case BackendKind::bs:
      mismatch(2);
      return std::make_shared<BSOracle>(backend);
    case BackendKind::finite_table: {
      auto table = MultiplicationTable::load(backend.path);
      mismatch(table.generators.size());
      return std::make_shared<TableOracle>(backend, std::move(table));
    }
  }
  throw Error("unknown backend");
}

// Builds the oracle for a presentation and checks that it is sound on the
// relators.
inline OraclePtr make_oracle(Presentation const& p) {
  auto oracle = make_oracle(p.backend, p.generator_count());
  for (auto const& r : p.relators) {
    if (!oracle->is_identity(r)) {
      throw Error("relator " + p.print(r) + " is not trivial in backend " +
                  p.backend.to_string());
    }
  }
  return oracle;
}

inline BSOracle const& as_bs(GroupOracle const& oracle) {
  auto const* bs = dynamic_cast<BSOracle const*>(&oracle);
  if (bs == nullptr) {
    throw Error("operation requires a bs backend, got " +
                oracle.backend().to_string());
  }
  return *bs;
}

}  // namespace gchord
