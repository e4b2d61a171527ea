#include "gfold/readpower.hpp"

#include <set>
#include <sstream>
#include <tuple>

#include "gfold/adjust.hpp"
#include "gfold/errors.hpp"
#include "gfold/oracle.hpp"

namespace gfold {

namespace {

VertexGroupRef vref_of(const ExtensionChain& c, const AGraph& b, int u) {
  return c.vertex_ref(b.graph_index, b.verts[static_cast<size_t>(u)].type);
}

}  // namespace

std::optional<ReadPowerResult> read_power(const ExtensionChain& c,
                                          const AGraph& b, const APath& p,
                                          int u1, int u2,
                                          const std::optional<GroupElem>& prefix,
                                          ReadPowerStats* stats,
                                          bool want_trace) {
  const int n = p.length();
  if (b.verts[static_cast<size_t>(u1)].type != p.start) return std::nullopt;
  if (b.verts[static_cast<size_t>(u2)].type != path_end(c, p))
    return std::nullopt;

  if (n == 0) {
    if (u1 != u2) return std::nullopt;
    VertexGroupRef ref = vref_of(c, b, u1);
    GroupElem val = p.elems[0];
    if (prefix)
      throw PreconditionError("prefixed power reading needs a positive-length loop");
    if (elem_trivial(c, ref, val)) {
      BPath q;
      q.start = u1;
      q.elems.push_back(val);
      return ReadPowerResult{q, 1};
    }
    auto oracle = c.oracle(ref, b.verts[static_cast<size_t>(u1)].gens);
    long long k = oracle->cyclic_exponent(val);
    if (k == 0) return std::nullopt;
    BPath q;
    q.start = u1;
    q.elems.push_back(elem_pow(c, ref, val, k));
    return ReadPowerResult{q, k};
  }

  // Hatted elements: positions are read modulo n, with the wrap element
  // p_n p_0 at position 0.
  VertexGroupRef base_ref = c.vertex_ref(b.graph_index, p.start);
  GroupElem wrap = elem_mul(c, base_ref, p.elems.back(), p.elems.front());
  auto hatted = [&](int i) -> const GroupElem& {
    return i == 0 ? wrap : p.elems[static_cast<size_t>(i)];
  };
  GroupElem root_a = p.elems[0];
  if (prefix)
    root_a = elem_mul(c, base_ref, elem_inv(c, base_ref, *prefix), root_a);

  struct Node {
    int u;
    int i;  // distance mod n
    long long depth;
    int parent;
    int fedge;        // incoming edge, -1 at root
    long long cexp;   // incoming adjustment
    GroupElem carried;
  };
  std::vector<Node> nodes;
  nodes.push_back({u1, 0, 0, -1, -1, 0, root_a});
  std::set<std::tuple<int, long long, int>> dedup;  // (f, c, head residue)

  for (size_t cur = 0; cur < nodes.size(); ++cur) {
    if (static_cast<long long>(cur) >= c.node_budget)
      throw GuardError("power reading node budget exceeded; the finiteness "
                       "hypothesis for double cosets appears violated");
    Node node = nodes[cur];
    if (stats) {
      ++stats->nodes_explored;
      if (want_trace) {
        std::ostringstream os;
        os << '(' << node.depth << ", v" << node.u << ", " << node.i << ", ";
        if (node.fedge < 0)
          os << "-, -)";
        else
          os << 'f' << node.fedge / 2 + 1 << (node.fedge % 2 ? "^-1" : "")
             << ", " << node.cexp << ')';
        stats->trace.push_back(os.str());
      }
    }
    int etype = p.edges[static_cast<size_t>(node.i)];
    const GroupElem& carried = node.carried;
    for (size_t f = 0; f < b.edges.size(); ++f) {
      if (!b.edges[f].alive || b.o(static_cast<int>(f)) != node.u) continue;
      if (b.edges[f].type != etype) continue;
      for (auto& adj :
           canonical_adjustments(c, b, static_cast<int>(f), carried)) {
        int w = b.t(static_cast<int>(f));
        if (node.i == n - 1 && w == u2) {
          VertexGroupRef wref = vref_of(c, b, w);
          GroupElem tail = elem_mul(
              c, wref,
              right_adjustment(c, b, static_cast<int>(f), adj.cexp),
              p.elems.back());
          auto oracle =
              c.oracle(wref, b.verts[static_cast<size_t>(w)].gens);
          if (oracle->membership(tail)) {
            long long m = (node.depth + 1) / n;
            // Reconstruct Q(sigma) from the carried elements along the chain.
            std::vector<int> fchain{static_cast<int>(f)};
            std::vector<long long> cchain{adj.cexp};
            std::vector<GroupElem> achain{carried};
            int trail = static_cast<int>(cur);
            while (nodes[static_cast<size_t>(trail)].parent >= 0) {
              const Node& t = nodes[static_cast<size_t>(trail)];
              fchain.push_back(t.fedge);
              cchain.push_back(t.cexp);
              achain.push_back(
                  nodes[static_cast<size_t>(t.parent)].carried);
              trail = t.parent;
            }
            std::reverse(fchain.begin(), fchain.end());
            std::reverse(cchain.begin(), cchain.end());
            std::reverse(achain.begin(), achain.end());
            BPath q;
            q.start = u1;
            for (size_t j = 0; j < fchain.size(); ++j) {
              VertexGroupRef ref = vref_of(c, b, b.o(fchain[j]));
              q.elems.push_back(elem_mul(
                  c, ref, achain[j],
                  left_adjustment(c, b, fchain[j], cchain[j])));
              q.edges.push_back(fchain[j]);
            }
            q.elems.push_back(tail);
            return ReadPowerResult{q, m};
          }
        }
        int head_res = (node.i + 1) % n;
        auto key = std::make_tuple(static_cast<int>(f), adj.cexp, head_res);
        if (dedup.count(key)) continue;
        dedup.insert(key);
        if (stats) stats->tree_edges.push_back(key);
        VertexGroupRef wref = vref_of(c, b, w);
        GroupElem next_carried = elem_mul(
            c, wref, right_adjustment(c, b, static_cast<int>(f), adj.cexp),
            hatted(head_res));
        nodes.push_back({w, head_res, node.depth + 1, static_cast<int>(cur),
                         static_cast<int>(f), adj.cexp, next_carried});
      }
    }
  }
  return std::nullopt;
}

}  // namespace gfold
