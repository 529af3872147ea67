#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "error.hpp"

namespace gchord {

// Exact rational with 64-bit parts, always stored in lowest terms with a
// positive denominator. Used for hyperbolicity constants and half-integer
// neighbourhood radii, where values stay tiny.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) {
      throw Error("rational with zero denominator");
    }
    normalize();
  }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }

  // Largest integer not exceeding the value.
  std::int64_t floor() const noexcept {
    std::int64_t q = num_ / den_;
    if ((num_ % den_ != 0) && (num_ < 0)) {
      --q;
    }
    return q;
  }

  std::int64_t ceil() const noexcept { return -Rational(-num_, den_).floor(); }

  friend Rational operator+(Rational const& x, Rational const& y) {
    return {x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_};
  }
  friend Rational operator-(Rational const& x, Rational const& y) {
    return {x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_};
  }
  friend Rational operator*(Rational const& x, Rational const& y) {
    return {x.num_ * y.num_, x.den_ * y.den_};
  }
  friend Rational operator/(Rational const& x, Rational const& y) {
    return {x.num_ * y.den_, x.den_ * y.num_};
  }
  friend bool operator==(Rational const&, Rational const&) = default;
  friend std::strong_ordering operator<=>(Rational const& x,
                                          Rational const& y) noexcept {
    return x.num_ * y.den_ <=> y.num_ * x.den_;
  }

  std::string to_string() const {
    if (den_ == 1) {
      return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, Rational const& r) {
    return os << r.to_string();
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Parses "3", "-2", "3/2" or "1.5" (decimal with a single fractional digit
// of 5 or 0 is accepted, as in half-integer radii).
inline Rational parse_rational(std::string const& text) {
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      return {std::stoll(text.substr(0, slash)),
              std::stoll(text.substr(slash + 1))};
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string frac = text.substr(dot + 1);
      std::int64_t den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) {
        den *= 10;
      }
      std::int64_t whole = std::stoll(text.substr(0, dot).empty()
                                          ? std::string("0")
                                          : text.substr(0, dot));
      std::int64_t part = frac.empty() ? 0 : std::stoll(frac);
      bool negative = !text.empty() && text[0] == '-';
      return Rational(whole * den + (negative ? -part : part), den);
    }
    std::size_t used = 0;
    std::int64_t v = std::stoll(text, &used);
    if (used != text.size()) {
      throw Error("bad rational");
    }
    return v;
  } catch (std::logic_error const&) {
    throw Error("cannot parse rational '" + text + "'");
  }
}

}  // namespace gchord
