#include "gfold/pcm.hpp"

#include <sstream>

#include "gfold/adjust.hpp"
#include "gfold/errors.hpp"
#include "gfold/oracle.hpp"
#include "gfold/readpower.hpp"

namespace gfold {

namespace {

std::string bpath_str(const ExtensionChain& c, const AGraph& b,
                      const BPath& q) {
  std::ostringstream os;
  int at = q.start;
  os << "v" << at << ": ";
  os << elem_str(c, c.vertex_ref(b.graph_index,
                                 b.verts[static_cast<size_t>(at)].type),
                 q.elems[0]);
  for (size_t i = 0; i < q.edges.size(); ++i) {
    int f = q.edges[i];
    os << " ; f" << f / 2 + 1 << (f % 2 ? "^-1" : "") << " ; ";
    at = b.t(f);
    os << elem_str(c, c.vertex_ref(b.graph_index,
                                   b.verts[static_cast<size_t>(at)].type),
                   q.elems[i + 1]);
  }
  return os.str();
}

}  // namespace

std::optional<PcmResult> pcm(const ExtensionChain& c, int graph_index,
                             int base_vertex, const std::vector<APath>& hgens,
                             const APath& x, const APath& g,
                             bool want_witness, std::vector<std::string>* trace) {
  APath gr = path_reduce(c, g);
  if (path_is_trivial(c, gr))
    throw PreconditionError("power coset membership with trivial g");
  APath xr = path_reduce(c, x);
  if (xr.start != base_vertex || gr.start != base_vertex)
    throw PreconditionError("power coset inputs must be loops at the base");

  // Cyclically reduce g, conjugating the whole problem along with it.
  auto [core, conj] = cyclically_reduce(c, gr);
  APath conj_inv = path_inv(c, conj);
  APath xm = path_reduce(c, path_mul(c, conj_inv, path_mul(c, xr, conj)));
  std::vector<APath> hm;
  for (auto& h : hgens)
    hm.push_back(
        path_reduce(c, path_mul(c, conj_inv, path_mul(c, h, conj))));
  int nbase = core.start;

  auto pick = [&](const std::optional<ReadPowerResult>& pos,
                  const std::optional<ReadPowerResult>& neg,
                  const AGraph& b) -> std::optional<PcmResult> {
    if (!pos && !neg) return std::nullopt;
    bool take_pos = pos && (!neg || pos->m <= neg->m);
    PcmResult r;
    r.m = take_pos ? pos->m : -neg->m;
    if (want_witness) r.witness = bpath_str(c, b, take_pos ? pos->q : neg->q);
    return r;
  };

  ReadPowerStats stats;
  ReadPowerStats* sp = trace ? &stats : nullptr;
  CosetGraphResult cg = build_coset_graph(c, graph_index, nbase, hm, xm);
  if (cg.graph) {
    const AGraph& b = *cg.graph;
    auto pos = read_power(c, b, core, b.ux, b.u0, std::nullopt, sp, trace);
    auto neg =
        read_power(c, b, path_inv(c, core), b.ux, b.u0, std::nullopt, sp, trace);
    if (trace) *trace = stats.trace;
    return pick(pos, neg, b);
  }

  GroupElem y = *cg.y;
  AGraph bs = build_subgroup_graph(c, graph_index, nbase, hm);
  VertexGroupRef bref = c.vertex_ref(graph_index, nbase);
  if (core.length() == 0) {
    // Both y and the powers live in the base vertex group; decide there
    // against B_{u0} = H ∩ A_v.
    auto suite =
        c.oracle(bref, bs.verts[static_cast<size_t>(bs.u0)].gens);
    auto m = suite->power_coset(y, core.elems[0]);
    if (!m) return std::nullopt;
    PcmResult r;
    r.m = *m;
    if (want_witness)
      r.witness = "vertex-group reduction with y = " + elem_str(c, bref, y);
    return r;
  }
  auto pos = read_power(c, bs, core, bs.u0, bs.u0, y, sp, trace);
  auto neg = read_power(c, bs, path_inv(c, core), bs.u0, bs.u0, y, sp, trace);
  if (trace) *trace = stats.trace;
  return pick(pos, neg, bs);
}

bool coset_meets_cyclic(const ExtensionChain& c, int graph_index,
                        int base_vertex, const std::vector<APath>& hgens,
                        const APath& x, const APath& g) {
  if (pcm(c, graph_index, base_vertex, hgens, x, g)) return true;
  AGraph b = build_subgroup_graph(c, graph_index, base_vertex, hgens);
  return sc_first(c, b, path_reduce(c, x), b.u0, b.u0).has_value();
}

std::vector<std::string> benign_check(const ExtensionChain& c) {
  std::vector<std::string> out;
  for (int i = 0; i < c.levels(); ++i) {
    std::string at = "graph=" + std::to_string(i + 1);
    out.push_back("PASS edge-group-cyclic " + at);
    const GraphOfGroups& g = c.graph(i);
    for (size_t v = 0; v < g.verts.size(); ++v)
      out.push_back("PASS vertex-oracle-suite " + at +
                    " vertex=" + std::to_string(v) + " kind=" +
                    g.verts[v].str());
    bool img_ok = !elem_trivial(c, c.group_ref(i), c.center(i)) &&
                  !g.omega_img(0).vec().is_zero();
    out.push_back(std::string(img_ok ? "PASS" : "FAIL") +
                  " edge-images-nontrivial " + at);
    out.push_back("ASSUME double-coset-at-designated-vertices " + at +
                  " vertex=0");
  }
  for (auto& n : c.notes()) out.push_back(n);
  return out;
}

}  // namespace gfold
