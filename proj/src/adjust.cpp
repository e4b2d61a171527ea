#include "gfold/adjust.hpp"

#include "gfold/errors.hpp"
#include "gfold/oracle.hpp"

namespace gfold {

namespace {

VertexGroupRef vref_of(const ExtensionChain& c, const AGraph& b, int u) {
  return c.vertex_ref(b.graph_index, b.verts[static_cast<size_t>(u)].type);
}

std::shared_ptr<VertexOracle> voracle(const ExtensionChain& c, const AGraph& b,
                                      int u) {
  return c.oracle(vref_of(c, b, u), b.verts[static_cast<size_t>(u)].gens);
}

}  // namespace

GroupElem left_adjustment(const ExtensionChain& c, const AGraph& b, int f,
                          long long cexp) {
  const GraphOfGroups& a = c.graph(b.graph_index);
  int ae = b.edges[static_cast<size_t>(f)].type;
  VertexGroupRef ref = vref_of(c, b, b.o(f));
  return elem_mul(c, ref, elem_pow(c, ref, a.alpha_img(ae), cexp),
                  elem_inv(c, ref, b.edges[static_cast<size_t>(f)].alpha));
}

GroupElem right_adjustment(const ExtensionChain& c, const AGraph& b, int f,
                           long long cexp) {
  const GraphOfGroups& a = c.graph(b.graph_index);
  int ae = b.edges[static_cast<size_t>(f)].type;
  VertexGroupRef ref = vref_of(c, b, b.t(f));
  return elem_mul(c, ref, elem_inv(c, ref, edge_omega(c, b, f)),
                  elem_pow(c, ref, a.omega_img(ae), -cexp));
}

std::vector<Adjustment> canonical_adjustments(const ExtensionChain& c,
                                              const AGraph& b, int f,
                                              const GroupElem& a) {
  const GraphOfGroups& ag = c.graph(b.graph_index);
  int u = b.o(f);
  int ae = b.edges[static_cast<size_t>(f)].type;
  VertexGroupRef ref = vref_of(c, b, u);
  auto oracle = voracle(c, b, u);
  std::vector<Adjustment> out;
  long long k = edge_group(c, b, f);
  if (k > 0) {
    for (long long r = 0; r < k; ++r) {
      GroupElem cand = elem_mul(c, ref, a, left_adjustment(c, b, f, r));
      if (auto expr = oracle->membership(cand))
        out.push_back({r, cand, *expr});
    }
    return out;
  }
  // Trivial edge group: the solution exponent, if any, is unique.
  GroupElem afa =
      elem_mul(c, ref, a, elem_inv(c, ref, b.edges[static_cast<size_t>(f)].alpha));
  const GroupElem& fa = b.edges[static_cast<size_t>(f)].alpha;
  GroupElem conj = elem_mul(
      c, ref, elem_mul(c, ref, fa, ag.alpha_img(ae)), elem_inv(c, ref, fa));
  auto hit = oracle->coset_intersect_cyclic(afa, conj);
  if (!hit) return out;
  out.push_back({hit->n, hit->element, hit->expr});
  return out;
}

BPath apply_sequence(const ExtensionChain& c, const AGraph& b, const APath& p,
                     const std::vector<int>& edges,
                     const std::vector<long long>& cexps) {
  if (edges.size() != cexps.size() ||
      edges.size() != static_cast<size_t>(p.length()))
    throw PreconditionError("adjustment sequence length mismatch");
  BPath q;
  if (edges.empty()) {
    q.start = -1;  // caller must place length-0 paths
    q.elems.push_back(p.elems[0]);
    return q;
  }
  q.start = b.o(edges[0]);
  int n = p.length();
  for (int i = 0; i <= n; ++i) {
    GroupElem e = p.elems[static_cast<size_t>(i)];
    int at = i == 0 ? q.start : b.t(edges[static_cast<size_t>(i) - 1]);
    VertexGroupRef ref = vref_of(c, b, at);
    if (i > 0)
      e = elem_mul(c, ref,
                   right_adjustment(c, b, edges[static_cast<size_t>(i) - 1],
                                    cexps[static_cast<size_t>(i) - 1]),
                   e);
    if (i < n)
      e = elem_mul(c, ref, e,
                   left_adjustment(c, b, edges[static_cast<size_t>(i)],
                                   cexps[static_cast<size_t>(i)]));
    q.elems.push_back(e);
    if (i < n) q.edges.push_back(edges[static_cast<size_t>(i)]);
  }
  return q;
}

namespace {

struct ScSearch {
  const ExtensionChain& c;
  const AGraph& b;
  const APath& p;
  int u2;
  size_t limit;
  std::vector<BPath> found;
  std::vector<int> edges;
  std::vector<long long> cexps;

  void dfs(int v, const GroupElem& carried, int i) {
    if (found.size() >= limit) return;
    int n = p.length();
    for (size_t f = 0; f < b.edges.size(); ++f) {
      if (found.size() >= limit) return;
      if (!b.edges[f].alive || b.o(static_cast<int>(f)) != v) continue;
      if (b.edges[f].type != p.edges[static_cast<size_t>(i)]) continue;
      for (auto& adj :
           canonical_adjustments(c, b, static_cast<int>(f), carried)) {
        if (found.size() >= limit) return;
        edges.push_back(static_cast<int>(f));
        cexps.push_back(adj.cexp);
        int w = b.t(static_cast<int>(f));
        VertexGroupRef wref =
            c.vertex_ref(b.graph_index,
                         b.verts[static_cast<size_t>(w)].type);
        GroupElem next = elem_mul(
            c, wref,
            right_adjustment(c, b, static_cast<int>(f), adj.cexp),
            p.elems[static_cast<size_t>(i) + 1]);
        if (i + 1 == n) {
          if (w == u2) {
            auto oracle = c.oracle(wref, b.verts[static_cast<size_t>(w)].gens);
            if (oracle->membership(next))
              found.push_back(apply_sequence(c, b, p, edges, cexps));
          }
        } else {
          dfs(w, next, i + 1);
        }
        edges.pop_back();
        cexps.pop_back();
      }
    }
  }
};

}  // namespace

std::vector<BPath> enumerate_sc(const ExtensionChain& c, const AGraph& b,
                                const APath& p, int u1, int u2, size_t limit) {
  std::vector<BPath> out;
  if (b.verts[static_cast<size_t>(u1)].type != p.start) return out;
  if (p.length() == 0) {
    if (u1 != u2) return out;
    auto oracle = c.oracle(
        c.vertex_ref(b.graph_index, b.verts[static_cast<size_t>(u1)].type),
        b.verts[static_cast<size_t>(u1)].gens);
    if (oracle->membership(p.elems[0])) {
      BPath q;
      q.start = u1;
      q.elems.push_back(p.elems[0]);
      out.push_back(q);
    }
    return out;
  }
  if (b.verts[static_cast<size_t>(u2)].type != path_end(c, p)) return out;
  ScSearch s{c, b, p, u2, limit, {}, {}, {}};
  s.dfs(u1, p.elems[0], 0);
  for (auto& q : s.found) {
    q.start = u1;
    out.push_back(q);
  }
  return out;
}

std::optional<BPath> sc_first(const ExtensionChain& c, const AGraph& b,
                              const APath& p, int u1, int u2) {
  auto v = enumerate_sc(c, b, p, u1, u2, 1);
  if (v.empty()) return std::nullopt;
  return v[0];
}

}  // namespace gfold
