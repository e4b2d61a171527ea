#include "gfold/abvec.hpp"

#include <sstream>

namespace gfold {

AbVec AbVec::unit(int rank, int i) {
  AbVec v = zero(rank);
  v.c.at(static_cast<size_t>(i) - 1) = 1;
  return v;
}

bool AbVec::is_zero() const {
  for (long long x : c)
    if (x != 0) return false;
  return true;
}

AbVec AbVec::operator+(const AbVec& rhs) const {
  if (rank() != rhs.rank())
    throw PreconditionError("abelian rank mismatch");
  AbVec out = *this;
  for (size_t i = 0; i < c.size(); ++i) out.c[i] += rhs.c[i];
  return out;
}

AbVec AbVec::operator-() const {
  AbVec out = *this;
  for (auto& x : out.c) x = -x;
  return out;
}

AbVec AbVec::operator*(long long k) const {
  AbVec out = *this;
  for (auto& x : out.c) x *= k;
  return out;
}

std::optional<long long> AbVec::multiple_of(const AbVec& base) const {
  if (rank() != base.rank()) return std::nullopt;
  if (is_zero()) return 0;
  if (base.is_zero()) return std::nullopt;
  long long n = 0;
  for (size_t i = 0; i < c.size(); ++i) {
    if (base.c[i] == 0) {
      if (c[i] != 0) return std::nullopt;
      continue;
    }
    if (c[i] % base.c[i] != 0) return std::nullopt;
    long long q = c[i] / base.c[i];
    if (n == 0)
      n = q;
    else if (n != q)
      return std::nullopt;
  }
  if (n == 0) return std::nullopt;  // this nonzero but all base coords hit 0
  if (*this == base * n) return n;
  return std::nullopt;
}

std::string AbVec::str() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i];
  }
  os << ')';
  return os.str();
}

AbVec parse_abvec(const std::string& text) {
  std::string body;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) body += ch;
  if (body.size() < 2 || body.front() != '(' || body.back() != ')')
    throw ParseError("abelian vector literal must look like (n1,...,nr)");
  body = body.substr(1, body.size() - 2);
  std::vector<long long> coords;
  std::istringstream is(body);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item.empty()) throw ParseError("empty coordinate in vector literal");
    try {
      coords.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw ParseError("bad coordinate '" + item + "'");
    }
  }
  return AbVec(coords);
}

}  // namespace gfold
