#pragma once

#include <cstdint>
#include <string>

#include "error.hpp"

namespace gchord {

// Which normal-form oracle realizes equality in the group.
enum class BackendKind { free, abelian, product_cyclic, bs, finite_table };

struct BackendDescriptor {
  BackendKind kind = BackendKind::free;
  // abelian: number of Z factors. product_cyclic: number of Z factors before
  // the trailing Z/modulus factor.
  int rank = 0;
  std::int64_t modulus = 0;
  // bs: the n of BS(1, n).
  std::int64_t n = 0;
  // finite_table: path to the JSON multiplication table.
  std::string path;

  static BackendDescriptor free_group() { return {}; }
  static BackendDescriptor abelian(int rank) {
    return {BackendKind::abelian, rank, 0, 0, {}};
  }
  static BackendDescriptor product_cyclic(int rank, std::int64_t modulus) {
    return {BackendKind::product_cyclic, rank, modulus, 0, {}};
  }
  static BackendDescriptor bs(std::int64_t n) {
    return {BackendKind::bs, 0, 0, n, {}};
  }
  static BackendDescriptor finite_table(std::string path) {
    return {BackendKind::finite_table, 0, 0, 0, std::move(path)};
  }

  friend bool operator==(BackendDescriptor const&,
                         BackendDescriptor const&) = default;

  void validate() const {
    switch (kind) {
      case BackendKind::free:
        break;
      case BackendKind::abelian:
        if (rank < 1) {
          throw Error("abelian backend needs rank >= 1");
        }
        break;
      case BackendKind::product_cyclic:
        if (rank < 0) {
          throw Error("product_cyclic backend needs rank >= 0");
        }
        if (modulus < 2) {
          throw Error("product_cyclic backend needs modulus >= 2");
        }
        break;
      case BackendKind::bs:
        if (n == 0) {
          throw Error("bs backend needs a nonzero n");
        }
        break;
      case BackendKind::finite_table:
        if (path.empty()) {
          throw Error("finite_table backend needs a path");
        }
        break;
    }
  }

  // The parameter line as it appears after the `backend` keyword.
  std::string to_string() const {
    switch (kind) {
      case BackendKind::free:
        return "free";
      case BackendKind::abelian:
        return "abelian " + std::to_string(rank);
      case BackendKind::product_cyclic:
        return "product_cyclic " + std::to_string(rank) + " " +
               std::to_string(modulus);
      case BackendKind::bs:
        return "bs 1 " + std::to_string(n);
      case BackendKind::finite_table:
        return "finite_table " + path;
    }
    return {};
  }
};

}  // namespace gchord
