#include <doctest.h>

#include <random>

#include "gfold/errors.hpp"
#include "gfold/lattice.hpp"

using namespace gfold;

namespace {
AbVec v(std::vector<long long> c) { return AbVec(std::move(c)); }
}  // namespace

TEST_CASE("membership and coordinates") {
  auto l = Lattice::from_generators(2, {v({2, 0}), v({0, 2})});
  auto c = l.coords(v({4, 2}));
  REQUIRE(c.has_value());
  CHECK(*c == std::vector<long long>{2, 1});
  CHECK(!l.contains(v({1, 0})));
  auto l2 = Lattice::from_generators(2, {v({1, 2})});
  auto c2 = l2.coords(v({3, 6}));
  REQUIRE(c2.has_value());
  CHECK(*c2 == std::vector<long long>{3});
  CHECK_THROWS_AS(l2.contains(v({1, 2, 3})), PreconditionError);
}

TEST_CASE("expression round trip over original generators") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    std::vector<AbVec> gens;
    int ng = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < ng; ++i)
      gens.push_back(v({static_cast<long long>(rng() % 7) - 3,
                        static_cast<long long>(rng() % 7) - 3,
                        static_cast<long long>(rng() % 7) - 3}));
    auto l = Lattice::from_generators(3, gens);
    AbVec target = AbVec::zero(3);
    std::vector<long long> coeff(gens.size(), 0);
    for (size_t i = 0; i < gens.size(); ++i) {
      coeff[i] = static_cast<long long>(rng() % 9) - 4;
      target = target + gens[i] * coeff[i];
    }
    auto e = l.express(target);
    REQUIRE(e.has_value());
    AbVec back = AbVec::zero(3);
    for (int letter : e->letters()) {
      const AbVec& g = gens[static_cast<size_t>(std::abs(letter)) - 1];
      back = back + (letter > 0 ? g : -g);
    }
    CHECK(back == target);
  }
}

TEST_CASE("cyclic intersection") {
  auto l = Lattice::from_generators(2, {v({2, 0}), v({0, 2})});
  CHECK(l.cyclic_exponent(v({1, 0})) == 2);
  auto l2 = Lattice::from_generators(2, {v({1, 1})});
  CHECK(l2.cyclic_exponent(v({1, 0})) == 0);
  auto l3 = Lattice::from_generators(2, {v({2, 4})});
  CHECK(l3.cyclic_exponent(v({1, 2})) == 2);
  CHECK_THROWS_AS(l3.cyclic_exponent(v({0, 0})), PreconditionError);
}

TEST_CASE("power coset congruences") {
  auto l = Lattice::from_generators(2, {v({2, 0}), v({0, 2})});
  CHECK(l.power_coset(v({1, 1}), v({1, 1})) == 1);
  auto l2 = Lattice::from_generators(2, {v({3, 0})});
  CHECK(!l2.power_coset(v({0, 1}), v({1, 0})).has_value());
  auto l3 = Lattice::from_generators(2, {v({2, 2})});
  CHECK(l3.power_coset(v({4, 4}), v({1, 1})) == 2);
}

TEST_CASE("power coset agrees with a direct scan") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 80; ++it) {
    std::vector<AbVec> gens;
    int ng = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < ng; ++i)
      gens.push_back(v({static_cast<long long>(rng() % 5) - 2,
                        static_cast<long long>(rng() % 5) - 2}));
    auto l = Lattice::from_generators(2, gens);
    AbVec x = v({static_cast<long long>(rng() % 5) - 2,
                 static_cast<long long>(rng() % 5) - 2});
    AbVec g = v({static_cast<long long>(rng() % 5) - 2,
                 static_cast<long long>(rng() % 5) - 2});
    auto got = l.power_coset(x, g);
    std::optional<long long> scan;
    for (long long m = 1; m <= 10 && !scan; ++m) {
      if (l.contains(g * m + -x)) scan = m;
      else if (l.contains(g * -m + -x)) scan = -m;
    }
    if (scan) {
      REQUIRE(got.has_value());
      CHECK(std::abs(*got) <= std::abs(*scan));
      CHECK(l.contains(g * *got + -x));
    } else if (got) {
      CHECK(std::abs(*got) > 10);
    }
  }
}

TEST_CASE("coset intersect cyclic including the zero shift") {
  auto l = Lattice::from_generators(2, {v({2, 0}), v({0, 2})});
  auto hit = l.coset_intersect_cyclic(v({2, 2}), v({1, 0}));
  REQUIRE(hit.has_value());
  CHECK(hit->n == 0);
  auto hit2 = l.coset_intersect_cyclic(v({1, 0}), v({1, 2}));
  REQUIRE(hit2.has_value());
  CHECK(l.contains(hit2->element));
  CHECK(hit2->element == v({1, 0}) + v({1, 2}) * hit2->n);
  CHECK(!l.coset_intersect_cyclic(v({1, 0}), v({2, 0})).has_value());
}
