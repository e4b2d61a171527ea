#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfold/errors.hpp"

namespace gfold {

// Element of a free abelian group Z^r.
struct AbVec {
  std::vector<long long> c;

  AbVec() = default;
  explicit AbVec(std::vector<long long> coords) : c(std::move(coords)) {}
  static AbVec zero(int rank) { return AbVec(std::vector<long long>(rank, 0)); }
  static AbVec unit(int rank, int i);  // 1-based index

  int rank() const { return static_cast<int>(c.size()); }
  bool is_zero() const;

  AbVec operator+(const AbVec& rhs) const;
  AbVec operator-() const;
  AbVec operator*(long long k) const;
  bool operator==(const AbVec& rhs) const { return c == rhs.c; }
  bool operator!=(const AbVec& rhs) const { return !(*this == rhs); }

  // n with *this == n * base, if any; zero vector yields 0.
  std::optional<long long> multiple_of(const AbVec& base) const;

  std::string str() const;  // "(n1,...,nr)"
};

AbVec parse_abvec(const std::string& text);

}  // namespace gfold
