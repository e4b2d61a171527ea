#include <doctest.h>

#include <set>

#include "gfold/adjust.hpp"
#include "gfold/agraph.hpp"
#include "gfold/bruteforce.hpp"
#include "gfold/chain.hpp"
#include "gfold/errors.hpp"
#include "gfold/readpower.hpp"

using namespace gfold;

namespace {

ExtensionChain g1() {
  return ExtensionChain::parse_text("base 2\nextend g=a rank 1\n");
}

APath elem_path(const ExtensionChain& c, int level, const std::string& text) {
  return path_reduce(c, c.parse_element(level, text).path());
}

}  // namespace

TEST_CASE("length-zero loops use the cyclic intersection") {
  ExtensionChain c = g1();
  AGraph b = build_subgroup_graph(c, 0, 0, {elem_path(c, 1, "a^3")});
  auto r = read_power(c, b, elem_path(c, 1, "a"), b.u0, b.u0);
  REQUIRE(r.has_value());
  CHECK(r->m == 3);
  CHECK(r->q.length() == 0);
  CHECK(r->q.elems[0].word() == parse_word("a^3", 2));

  AGraph bb = build_subgroup_graph(c, 0, 0, {elem_path(c, 1, "b")});
  CHECK(!read_power(c, bb, elem_path(c, 1, "a"), bb.u0, bb.u0).has_value());
}

TEST_CASE("conjugated cyclic subgroup reduces to a plain power") {
  ExtensionChain c = g1();
  // t a^2 t^-1 = a^2 in this chain, so the subgroup graph carries <a^2>.
  AGraph b =
      build_subgroup_graph(c, 0, 0, {elem_path(c, 1, "t a^2 t^-1")});
  auto r = read_power(c, b, elem_path(c, 1, "a"), b.u0, b.u0);
  REQUIRE(r.has_value());
  CHECK(r->m == 2);
  auto bm = brute_pcm(c, 1, {c.parse_element(1, "t a^2 t^-1")},
                      c.parse_element(1, "1"), c.parse_element(1, "a"), 10, 6);
  REQUIRE(bm.has_value());
  CHECK(*bm == 2);
}

TEST_CASE("positive-length powers are read with minimal exponent") {
  ExtensionChain c = g1();
  std::vector<APath> h{elem_path(c, 1, "b t b t")};
  AGraph b = build_subgroup_graph(c, 0, 0, h);
  APath p = elem_path(c, 1, "b t");
  ReadPowerStats stats;
  auto r = read_power(c, b, p, b.u0, b.u0, std::nullopt, &stats, true);
  REQUIRE(r.has_value());
  CHECK(r->m == 2);
  CHECK(path_equal(c, mu(c, b, r->q), power_path(c, p, 2)));
  CHECK(stats.nodes_explored >= 1);
  CHECK(!stats.trace.empty());
  // Minimality: no semi-canonical reading of smaller powers exists.
  for (long long mp = 1; mp < r->m; ++mp)
    CHECK(enumerate_sc(c, b, power_path(c, p, mp), b.u0, b.u0).empty());
  // Search-tree dedup invariant.
  std::set<std::tuple<int, long long, int>> seen(stats.tree_edges.begin(),
                                                 stats.tree_edges.end());
  CHECK(seen.size() == stats.tree_edges.size());
}

TEST_CASE("no reading exists for foreign directions") {
  ExtensionChain c = g1();
  AGraph b = build_subgroup_graph(c, 0, 0, {elem_path(c, 1, "b t b t")});
  CHECK(!read_power(c, b, elem_path(c, 1, "t a"), b.u0, b.u0).has_value());
}

TEST_CASE("prefix variant reads coset translates") {
  ExtensionChain c = g1();
  // H = <a^-1 b t>, y = a: a^-1 (b t)^m lands in H exactly at m = 1.
  std::vector<APath> h{elem_path(c, 1, "a^-1 b t")};
  AGraph b = build_subgroup_graph(c, 0, 0, h);
  APath p = elem_path(c, 1, "b t");
  auto r = read_power(c, b, p, b.u0, b.u0,
                      GroupElem(parse_word("a", 2)));
  REQUIRE(r.has_value());
  CHECK(r->m == 1);
  GroupElem val = c.parse_element(1, "a^-1");
  VertexGroupRef ref = c.group_ref(1);
  GroupElem target = elem_mul(c, ref, val,
                              GroupElem(path_pow(c, p, r->m)));
  CHECK(path_equal(c, mu(c, b, r->q), target.path()));
  // No reading pretends to a coset the subgroup cannot reach.
  auto none = read_power(c, b, p, b.u0, b.u0,
                         GroupElem(parse_word("b", 2)));
  CHECK(!none.has_value());
}

TEST_CASE("node budget guard") {
  ExtensionChain c = g1();
  c.node_budget = 1;
  AGraph b = build_subgroup_graph(c, 0, 0, {elem_path(c, 1, "b t b t")});
  CHECK_THROWS_AS(
      read_power(c, b, elem_path(c, 1, "b t"), b.u0, b.u0),
      GuardError);
}
