#include <doctest.h>

#include <random>

#include "gfold/bruteforce.hpp"
#include "gfold/chain.hpp"
#include "gfold/errors.hpp"
#include "gfold/stallings.hpp"

using namespace gfold;

namespace {
ExtensionChain g1() {
  return ExtensionChain::parse_text("base 2\nextend g=a rank 1\n");
}
}  // namespace

TEST_CASE("bounded membership search") {
  ExtensionChain c = g1();
  std::vector<GroupElem> h{c.parse_element(1, "a^2")};
  CHECK(brute_membership(c, 1, h, c.parse_element(1, "a^4"), 8));
  CHECK(!brute_membership(c, 1, h, c.parse_element(1, "a^3"), 8));
  CHECK(brute_membership(c, 1, {}, c.parse_element(1, "1"), 2));
}

TEST_CASE("brute membership cross-validates the exact free oracle") {
  ExtensionChain c = g1();
  std::mt19937_64 rng(19);
  auto rword = [&](int len) {
    std::vector<int> ls;
    for (int i = 0; i < len; ++i) {
      int l = static_cast<int>(rng() % 4) + 1;
      ls.push_back(l <= 2 ? l : -(l - 2));
    }
    return Word(2, ls);
  };
  for (int it = 0; it < 40; ++it) {
    std::vector<Word> wgens;
    std::vector<GroupElem> egens;
    for (int i = 0; i < 2; ++i) {
      wgens.push_back(rword(1 + static_cast<int>(rng() % 3)));
      egens.push_back(c.embed(0, 1, GroupElem(wgens.back())));
    }
    auto aut = StallingsAutomaton::build(2, wgens);
    for (int q = 0; q < 6; ++q) {
      Word w = rword(static_cast<int>(rng() % 5));
      bool brute = brute_membership(c, 1, egens, c.embed(0, 1, GroupElem(w)), 6);
      if (brute) CHECK(aut.contains(w));
      if (!aut.contains(w)) CHECK(!brute);
    }
  }
}

TEST_CASE("bounded power coset search") {
  ExtensionChain c = g1();
  auto none = brute_pcm(c, 1, {c.parse_element(1, "t")},
                        c.parse_element(1, "1"), c.parse_element(1, "a"), 5, 6);
  CHECK(!none.has_value());
  auto one = brute_pcm(c, 1, {c.parse_element(1, "a t")},
                       c.parse_element(1, "t^-1"), c.parse_element(1, "a"), 5, 6);
  REQUIRE(one.has_value());
  CHECK(*one == 1);
}

TEST_CASE("abelianization certificates") {
  ExtensionChain c = g1();
  CHECK(abelian_nonmember(c, 1, {c.parse_element(1, "a^2")},
                          c.parse_element(1, "b")));
  CHECK(!abelian_nonmember(c, 1, {c.parse_element(1, "a^2")},
                           c.parse_element(1, "a^2")));
  CHECK(abelian_pcm_impossible(c, 1, {c.parse_element(1, "t")},
                               c.parse_element(1, "1"),
                               c.parse_element(1, "a")));
  CHECK(!abelian_pcm_impossible(c, 1, {c.parse_element(1, "a t")},
                                c.parse_element(1, "t^-1"),
                                c.parse_element(1, "a")));
}

TEST_CASE("rewriting normal forms") {
  KbSystem kb;
  auto w = [](const std::string& s) {
    return parse_word(s, 3, [](const std::string& name) -> int {
      if (name == "a") return 1;
      if (name == "b") return 2;
      if (name == "t") return 3;
      return 0;
    });
  };
  CHECK(kb.trivial(w("a t a^-1 t^-1")));
  CHECK(kb.normal_form(w("t b")) == w("t b"));
  CHECK(kb.normal_form(w("t a b")) == w("a t b"));
  CHECK(kb.normal_form(w("t a t^-1")) == w("a"));
  CHECK(!kb.trivial(w("b t b^-1 t^-1")));
  CHECK(kb.equal(w("t a"), w("a t")));
}
