#include <doctest.h>

#include <random>

#include "gfold/bruteforce.hpp"
#include "gfold/chain.hpp"
#include "gfold/errors.hpp"

using namespace gfold;

namespace {

ExtensionChain g1() {
  return ExtensionChain::parse_text("base 2\nextend g=a rank 1\n");
}

ExtensionChain g2() {
  return ExtensionChain::parse_text(
      "base 2\nextend g=a rank 1\nextend g=b t1.1 rank 1\n");
}

std::string rand_word_text(std::mt19937_64& rng, int maxlen,
                           const std::vector<std::string>& letters) {
  int len = 1 + static_cast<int>(rng() % static_cast<unsigned>(maxlen));
  std::string s;
  for (int j = 0; j < len; ++j) {
    if (j) s += ' ';
    s += letters[rng() % letters.size()];
  }
  return s;
}

}  // namespace

TEST_CASE("chain files parse and validate") {
  ExtensionChain c = g1();
  CHECK(c.base_rank() == 2);
  CHECK(c.levels() == 1);
  CHECK(c.extra_rank(0) == 1);
  CHECK(c.letter_count(1) == 3);
  CHECK(c.letter_name(1, 3) == "t1.1");

  ExtensionChain two = g2();
  CHECK(two.levels() == 2);
  CHECK(two.letter_count(2) == 4);
  CHECK(two.letter_name(2, 4) == "t2.1");

  CHECK_THROWS_AS(ExtensionChain::parse_text("base 2\nextend g=a^2 rank 1\n"),
                  ParseError);
  CHECK_THROWS_AS(ExtensionChain::parse_text("base 2\nextend g=a a^-1 rank 1\n"),
                  ParseError);
  CHECK_THROWS_AS(ExtensionChain::parse_text("extend g=a rank 1\n"), ParseError);
  CHECK_THROWS_AS(ExtensionChain::parse_text("base 2\nnonsense\n"), ParseError);
  // Comments and blank lines are fine.
  ExtensionChain ok = ExtensionChain::parse_text(
      "# a chain\nbase 2\n\nextend g=a rank 1  # cyclic center\n");
  CHECK(ok.levels() == 1);
}

TEST_CASE("centers conjugate into abelian vertex groups are rejected") {
  CHECK_THROWS_AS(ExtensionChain::parse_text(
                      "base 2\nextend g=a rank 1\nextend g=t1.1 rank 1\n"),
                  ParseError);
  CHECK_THROWS_AS(
      ExtensionChain::parse_text(
          "base 2\nextend g=a rank 1\nextend g=b t1.1 b^-1 rank 1\n"),
      ParseError);
  // Proper powers at higher levels are caught by the aligned-prefix check.
  CHECK_THROWS_AS(ExtensionChain::parse_text(
                      "base 2\nextend g=a rank 1\nextend g=b t1.1 b t1.1 rank 1\n"),
                  ParseError);
  // An elliptic center on the lower side with cyclic centralizer is fine.
  ExtensionChain ok = ExtensionChain::parse_text(
      "base 2\nextend g=a rank 1\nextend g=b rank 2\n");
  CHECK(ok.levels() == 2);
  CHECK(ok.extra_rank(1) == 2);
  // But a power of the previous center is not.
  CHECK_THROWS_AS(ExtensionChain::parse_text(
                      "base 2\nextend g=a rank 1\nextend g=a rank 1\n"),
                  ParseError);
}

TEST_CASE("word problem at level one") {
  ExtensionChain c = g1();
  CHECK(c.word_problem(1, "a t1.1 a^-1 t1.1^-1"));
  CHECK(!c.word_problem(1, "b t b^-1 t^-1"));
  CHECK(c.word_problem(1, ""));
  CHECK(c.word_problem(1, "1"));
  CHECK(!c.word_problem(1, "a"));
  CHECK(c.word_problem(1, "t a t^-1 a^-1"));
}

TEST_CASE("word problem against the rewriting cross-check") {
  ExtensionChain c = g1();
  KbSystem kb;
  std::mt19937_64 rng(77);
  std::vector<std::string> letters{"a", "a^-1", "b", "b^-1", "t", "t^-1"};
  for (int it = 0; it < 1000; ++it) {
    std::string s = rand_word_text(rng, 10, letters);
    Word w3 = parse_word(s, 3, [&](const std::string& name) -> int {
      if (name == "a") return 1;
      if (name == "b") return 2;
      if (name == "t") return 3;
      return 0;
    });
    CHECK(c.word_problem(1, s) == kb.trivial(w3));
  }
}

TEST_CASE("parse and print round trip through the word problem") {
  ExtensionChain c = g2();
  std::mt19937_64 rng(13);
  std::vector<std::string> letters{"a", "a^-1", "b",      "b^-1",
                                   "t1.1", "t1.1^-1", "t2.1", "t2.1^-1"};
  for (int it = 0; it < 100; ++it) {
    std::string s = rand_word_text(rng, 8, letters);
    GroupElem e = c.parse_element(2, s);
    std::string printed = c.print_element(2, e);
    GroupElem back = c.parse_element(2, printed);
    VertexGroupRef ref = c.group_ref(2);
    CHECK(elem_equal(c, ref, e, back));
  }
  CHECK(c.print_element(2, c.parse_element(2, "a a^-1")) == "1");
}

TEST_CASE("letter aliases") {
  ExtensionChain c = g1();
  VertexGroupRef ref = c.group_ref(1);
  CHECK(elem_equal(c, ref, c.parse_element(1, "t"), c.parse_element(1, "t1.1")));
  CHECK(elem_equal(c, ref, c.parse_element(1, "t1"), c.parse_element(1, "t1.1")));
  CHECK(elem_equal(c, ref, c.parse_element(1, "x1"), c.parse_element(1, "a")));
  CHECK_THROWS_AS(c.parse_element(1, "t3.1"), ParseError);
  CHECK_THROWS_AS(c.parse_element(0, "t"), ParseError);
}

TEST_CASE("levels embed compatibly") {
  ExtensionChain c = g2();
  std::mt19937_64 rng(31);
  std::vector<std::string> letters{"a", "a^-1", "b", "b^-1", "t1.1", "t1.1^-1"};
  for (int it = 0; it < 50; ++it) {
    std::string s = rand_word_text(rng, 8, letters);
    bool at1 = c.word_problem(1, c.parse_element(1, s));
    bool at2 = c.word_problem(2, c.parse_element(2, s));
    CHECK(at1 == at2);
  }
}

TEST_CASE("abelianization") {
  ExtensionChain c = g2();
  CHECK(c.abelian_rank() == 4);
  AbVec v = c.abelianize(2, c.parse_element(2, "a b^-2 t1.1 t2.1^3"));
  CHECK(v == AbVec({1, -2, 1, 3}));
  CHECK(c.abelianize(2, c.parse_element(2, "b t1.1 b^-1 t1.1^-1")) ==
        AbVec::zero(4));
}

TEST_CASE("subgroup presentations at higher levels") {
  ExtensionChain c = g2();
  // <a, t1.1> is still free abelian of rank 2 seen inside the larger chain.
  Presentation pres =
      c.subgroup_presentation(2, std::vector<std::string>{"a", "t1.1"});
  CHECK(pres.abelian_invariants() == std::vector<long long>{0, 0});
  // <b t1.1, t2.1> is the promoted centralizer: free abelian of rank 2.
  Presentation zz =
      c.subgroup_presentation(2, std::vector<std::string>{"b t1.1", "t2.1"});
  CHECK(zz.abelian_invariants() == std::vector<long long>{0, 0});
  CHECK(zz.rank() - static_cast<int>(zz.relators.size()) <= 2);
}

TEST_CASE("level-zero subgroup presentations are free") {
  ExtensionChain c = g1();
  Presentation pres = c.subgroup_presentation(
      0, std::vector<std::string>{"a^2", "a b a^-1"});
  CHECK(pres.rank() == 2);
  CHECK(pres.relators.empty());
}

TEST_CASE("wider abelian extensions") {
  ExtensionChain c =
      ExtensionChain::parse_text("base 2\nextend g=a rank 2\n");
  CHECK(c.letter_count(1) == 4);
  CHECK(c.word_problem(1, "t1.1 t1.2 t1.1^-1 t1.2^-1"));
  CHECK(c.word_problem(1, "a t1.2 a^-1 t1.2^-1"));
  CHECK(!c.word_problem(1, "b t1.2 b^-1 t1.2^-1"));
  Presentation pres = c.subgroup_presentation(
      1, std::vector<std::string>{"a", "t1.1", "t1.2"});
  CHECK(pres.abelian_invariants() == std::vector<long long>{0, 0, 0});
}

TEST_CASE("validation notes feed the report") {
  ExtensionChain c = g2();
  bool found = false;
  for (auto& n : c.notes())
    if (n.find("center-root-free") != std::string::npos) found = true;
  CHECK(found);
}
