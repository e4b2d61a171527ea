#include "gfold/word.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace gfold {

Word::Word(int rank, std::vector<int> letters) : rank_(rank) {
  letters_.reserve(letters.size());
  for (int l : letters) {
    if (l == 0 || std::abs(l) > rank_)
      throw PreconditionError("word letter out of range for rank " +
                              std::to_string(rank_));
    if (!letters_.empty() && letters_.back() == -l)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }
}

Word Word::operator*(const Word& rhs) const {
  if (rank_ != rhs.rank_)
    throw PreconditionError("word rank mismatch: " + std::to_string(rank_) +
                            " vs " + std::to_string(rhs.rank_));
  std::vector<int> out = letters_;
  for (int l : rhs.letters_) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  Word w;
  w.rank_ = rank_;
  w.letters_ = std::move(out);
  return w;
}

Word Word::inverse() const {
  Word w;
  w.rank_ = rank_;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(-*it);
  return w;
}

Word Word::pow(long long n) const {
  Word base = n < 0 ? inverse() : *this;
  long long k = n < 0 ? -n : n;
  Word acc = Word::identity(rank_);
  for (long long i = 0; i < k; ++i) acc = acc * base;
  return acc;
}

bool Word::operator<(const Word& rhs) const {
  if (letters_.size() != rhs.letters_.size())
    return letters_.size() < rhs.letters_.size();
  return letters_ < rhs.letters_;
}

std::pair<Word, Word> Word::cyclic_reduce() const {
  size_t i = 0, j = letters_.size();
  while (j > i + 1 && letters_[i] == -letters_[j - 1]) {
    ++i;
    --j;
  }
  Word conj, core;
  conj.rank_ = core.rank_ = rank_;
  conj.letters_.assign(letters_.begin(), letters_.begin() + i);
  core.letters_.assign(letters_.begin() + i, letters_.begin() + j);
  return {conj, core};
}

std::optional<long long> Word::power_of(const Word& base) const {
  if (trivial()) return 0;
  if (base.trivial()) return std::nullopt;
  auto [conj, core] = base.cyclic_reduce();
  // base^n reduced has length 2|conj| + |n||core|.
  long long extra = length() - 2 * conj.length();
  if (extra <= 0 || extra % core.length() != 0) return std::nullopt;
  long long n = extra / core.length();
  if (*this == base.pow(n)) return n;
  if (*this == base.pow(-n)) return -n;
  return std::nullopt;
}

bool Word::is_proper_power() const {
  auto [conj, core] = cyclic_reduce();
  int n = core.length();
  if (n == 0) return false;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (int i = d; i < n && periodic; ++i)
      periodic = core.letters()[i] == core.letters()[i - d];
    if (periodic) return true;
  }
  return false;
}

std::vector<std::string> default_letter_names(int rank) {
  std::vector<std::string> names;
  for (int i = 0; i < rank; ++i) {
    if (i < 26)
      names.push_back(std::string(1, static_cast<char>('a' + i)));
    else
      names.push_back("g" + std::to_string(i + 1));
  }
  return names;
}

std::string Word::str(const std::vector<std::string>& names) const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  size_t i = 0;
  bool first = true;
  while (i < letters_.size()) {
    size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    long long e = static_cast<long long>(j - i);
    if (letters_[i] < 0) e = -e;
    if (!first) os << ' ';
    first = false;
    os << names.at(static_cast<size_t>(std::abs(letters_[i])) - 1);
    if (e != 1) os << '^' << e;
    i = j;
  }
  return os.str();
}

std::string Word::str() const { return str(default_letter_names(rank_)); }

namespace {

bool parse_exponent(const std::string& tok, size_t caret, long long* e) {
  if (caret + 1 >= tok.size()) return false;
  size_t pos = caret + 1;
  bool neg = false;
  if (tok[pos] == '-' || tok[pos] == '+') {
    neg = tok[pos] == '-';
    ++pos;
  }
  if (pos >= tok.size()) return false;
  long long v = 0;
  for (; pos < tok.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(tok[pos]))) return false;
    v = v * 10 + (tok[pos] - '0');
  }
  *e = neg ? -v : v;
  return true;
}

}  // namespace

Word parse_word(const std::string& text, int rank,
                const std::function<int(const std::string&)>& resolve) {
  Word out = Word::identity(rank);
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    long long e = 1;
    std::string name = tok;
    size_t caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      if (!parse_exponent(tok, caret, &e))
        throw ParseError("malformed exponent in '" + tok + "'");
    }
    if (name == "1") continue;
    int l = resolve(name);
    if (l == 0) throw ParseError("unknown letter '" + name + "'");
    out = out * Word::letter(rank, l).pow(e);
  }
  return out;
}

Word parse_word(const std::string& text, int rank) {
  auto names = default_letter_names(rank);
  return parse_word(text, rank, [&](const std::string& name) -> int {
    for (int i = 0; i < rank; ++i)
      if (names[static_cast<size_t>(i)] == name) return i + 1;
    if (name.size() >= 2 && (name[0] == 'g' || name[0] == 'x')) {
      int idx = std::atoi(name.c_str() + 1);
      if (idx >= 1 && idx <= rank) return idx;
    }
    return 0;
  });
}

}  // namespace gfold
