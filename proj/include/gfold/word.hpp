#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfold/errors.hpp"

namespace gfold {

// Freely reduced word over a free group of a given rank.  Letters are signed
// 1-based generator indices; no adjacent pair (i, -i) occurs.
class Word {
 public:
  Word() : rank_(0) {}
  Word(int rank, std::vector<int> letters);

  static Word identity(int rank) { return Word(rank, {}); }
  static Word letter(int rank, int l) { return Word(rank, {l}); }

  int rank() const { return rank_; }
  const std::vector<int>& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool trivial() const { return letters_.empty(); }

  Word operator*(const Word& rhs) const;
  Word inverse() const;
  Word pow(long long n) const;
  bool operator==(const Word& rhs) const {
    return rank_ == rhs.rank_ && letters_ == rhs.letters_;
  }
  bool operator!=(const Word& rhs) const { return !(*this == rhs); }
  bool operator<(const Word& rhs) const;

  // w = conj * core * conj^{-1}, reduced as written, core cyclically reduced.
  std::pair<Word, Word> cyclic_reduce() const;  // (conj, core)

  // n with *this == base^n, if any.  Trivial word yields 0.
  std::optional<long long> power_of(const Word& base) const;

  bool is_proper_power() const;

  std::string str(const std::vector<std::string>& names) const;
  std::string str() const;  // default names a, b, c, ...

 private:
  int rank_;
  std::vector<int> letters_;
};

std::vector<std::string> default_letter_names(int rank);

// Parses whitespace-separated atoms `name` or `name^<int>`; `1` is the
// identity. The resolver maps a name to a signed letter (0 = unknown).
Word parse_word(const std::string& text, int rank,
                const std::function<int(const std::string&)>& resolve);

// Convenience: names a..z (and g1, g2, ... aliases) for a given rank.
Word parse_word(const std::string& text, int rank);

}  // namespace gfold
