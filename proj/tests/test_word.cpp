#include <doctest.h>

#include <random>

#include "gfold/errors.hpp"
#include "gfold/word.hpp"

using namespace gfold;

TEST_CASE("free reduction through multiplication") {
  Word a = parse_word("a", 2);
  Word ai = parse_word("a^-1", 2);
  CHECK((a * ai).trivial());
  CHECK(parse_word("a b", 2) * parse_word("b^-1 a", 2) == parse_word("a^2", 2));
  CHECK((parse_word("a^3 b", 2) * parse_word("b^-1 a^-3", 2)).trivial());
}

TEST_CASE("rank mismatch is rejected") {
  CHECK_THROWS_AS(parse_word("a", 2) * parse_word("a", 3), PreconditionError);
}

TEST_CASE("parse and print round trip") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 100; ++it) {
    std::vector<int> letters;
    for (int i = 0; i < 12; ++i) {
      int l = static_cast<int>(rng() % 4) + 1;
      letters.push_back(l <= 2 ? l : -(l - 2));
    }
    Word w(2, letters);
    Word back = parse_word(w.str(), 2);
    CHECK(back == w);
  }
  CHECK(parse_word("1", 2).trivial());
  CHECK(parse_word("g2^-3", 2) == parse_word("b^-3", 2));
  CHECK_THROWS_AS(parse_word("q", 2), ParseError);
  CHECK_THROWS_AS(parse_word("a^x", 2), ParseError);
}

TEST_CASE("cyclic reduction splits conjugator and core") {
  Word w = parse_word("b^-1 a b^2 a^-1 b^-2", 2);
  auto [conj, core] = w.cyclic_reduce();
  CHECK(conj * core * conj.inverse() == w);
  CHECK(core.cyclic_reduce().second == core);
}

TEST_CASE("power detection") {
  Word a = parse_word("a", 2);
  CHECK(parse_word("a^4", 2).power_of(a) == 4);
  CHECK(parse_word("a^-4", 2).power_of(a) == -4);
  CHECK(Word::identity(2).power_of(a) == 0);
  CHECK(!parse_word("a b", 2).power_of(a).has_value());
  Word c = parse_word("b a b^-1", 2);
  CHECK(parse_word("b a^3 b^-1", 2).power_of(c) == 3);
  CHECK(!parse_word("b a^3 b", 2).power_of(c).has_value());
}

TEST_CASE("proper powers") {
  CHECK(parse_word("a^2", 2).is_proper_power());
  CHECK(parse_word("b a^2 b^-1", 2).is_proper_power());
  CHECK(!parse_word("a b", 2).is_proper_power());
  CHECK(parse_word("a b a b", 2).is_proper_power());
  CHECK(!parse_word("a", 2).is_proper_power());
}
