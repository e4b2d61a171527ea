#include "gfold/agraph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>

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

// Local expression (over B_u generators) substituted into the graph's symbol
// alphabet.
Word subst_expr(const AGraph& b, int u, const Word& local) {
  Word out = Word::identity(b.nsymbols);
  const auto& exprs = b.verts[static_cast<size_t>(u)].exprs;
  for (int l : local.letters()) {
    const Word& e = exprs[static_cast<size_t>(std::abs(l)) - 1];
    out = out * (l > 0 ? e : e.inverse());
  }
  return out;
}

void set_edge_expr(AGraph& b, int e, const Word& w) {
  b.edges[static_cast<size_t>(e)].expr = w;
  b.edges[static_cast<size_t>(b.inv(e))].expr = w.inverse();
}

void set_alpha(AGraph& b, int e, GroupElem v) {
  b.edges[static_cast<size_t>(e)].alpha = std::move(v);
}

void kill_edge_pair(AGraph& b, int e) {
  b.edges[static_cast<size_t>(e)].alive = false;
  b.edges[static_cast<size_t>(b.inv(e))].alive = false;
}

// A0 at v: conjugate B_v by g and left-multiply the alpha label of every
// half-edge leaving v.  Decorations are untouched (the canonical path value
// at v absorbs g).
void apply_a0(const ExtensionChain& c, AGraph& b, int v, const GroupElem& g) {
  VertexGroupRef ref = vref_of(c, b, v);
  for (auto& e : b.edges) {
    if (!e.alive) continue;
    if (e.from == v) e.alpha = elem_mul(c, ref, g, e.alpha);
  }
  auto& vert = b.verts[static_cast<size_t>(v)];
  GroupElem gi = elem_inv(c, ref, g);
  for (auto& s : vert.gens) s = elem_mul(c, ref, elem_mul(c, ref, g, s), gi);
}

void add_gen(const ExtensionChain& c, AGraph& b, int u, const GroupElem& val,
             const Word& expr) {
  if (voracle(c, b, u)->membership(val)) return;
  b.verts[static_cast<size_t>(u)].gens.push_back(val);
  b.verts[static_cast<size_t>(u)].exprs.push_back(expr);
}

void trim(const ExtensionChain& c, AGraph& b) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> degree(b.verts.size(), 0);
    for (auto& e : b.edges) {
      if (!e.alive) continue;
      degree[static_cast<size_t>(e.from)]++;
    }
    for (size_t v = 0; v < b.verts.size(); ++v) {
      if (!b.verts[v].alive || b.distinguished(static_cast<int>(v))) continue;
      if (degree[v] > 1) continue;
      bool trivial = true;
      for (auto& s : b.verts[v].gens)
        if (!elem_trivial(c, vref_of(c, b, static_cast<int>(v)), s))
          trivial = false;
      if (!trivial) continue;
      for (size_t e = 0; e < b.edges.size(); ++e)
        if (b.edges[e].alive && (b.edges[e].from == static_cast<int>(v) ||
                                 b.edges[e].to == static_cast<int>(v)))
          kill_edge_pair(b, static_cast<int>(e));
      b.verts[v].alive = false;
      changed = true;
    }
  }
}

}  // namespace

int bpath_end(const AGraph& b, const BPath& q) {
  int at = q.start;
  for (int e : q.edges) at = b.t(e);
  return at;
}

GroupElem edge_omega(const ExtensionChain& c, const AGraph& b, int e) {
  return elem_inv(c, vref_of(c, b, b.t(e)),
                  b.edges[static_cast<size_t>(b.inv(e))].alpha);
}

APath mu(const ExtensionChain& c, const AGraph& b, const BPath& q) {
  APath p;
  p.graph = b.graph_index;
  p.start = b.verts[static_cast<size_t>(q.start)].type;
  if (q.edges.empty()) {
    p.elems.push_back(q.elems[0]);
    return p;
  }
  int f1 = q.edges.front();
  p.elems.push_back(elem_mul(c, vref_of(c, b, q.start), q.elems[0],
                             b.edges[static_cast<size_t>(f1)].alpha));
  for (size_t i = 0; i < q.edges.size(); ++i) {
    int f = q.edges[i];
    p.edges.push_back(b.edges[static_cast<size_t>(f)].type);
    int u = b.t(f);
    VertexGroupRef ref = vref_of(c, b, u);
    GroupElem mid = elem_mul(c, ref, edge_omega(c, b, f), q.elems[i + 1]);
    if (i + 1 < q.edges.size()) {
      int fn = q.edges[i + 1];
      mid = elem_mul(c, ref, mid, b.edges[static_cast<size_t>(fn)].alpha);
    }
    p.elems.push_back(mid);
  }
  return p;
}

Word psi(const ExtensionChain& c, const AGraph& b, const BPath& q) {
  Word out = Word::identity(b.nsymbols);
  int at = q.start;
  for (size_t i = 0; i < q.elems.size(); ++i) {
    auto expr = voracle(c, b, at)->membership(q.elems[i]);
    if (!expr)
      throw Error("internal: B-path element escapes its vertex group");
    out = out * subst_expr(b, at, *expr);
    if (i < q.edges.size()) {
      out = out * b.edges[static_cast<size_t>(q.edges[i])].expr;
      at = b.t(q.edges[i]);
    }
  }
  return out;
}

long long edge_group(const ExtensionChain& c, const AGraph& b, int e) {
  const GraphOfGroups& a = c.graph(b.graph_index);
  int ae = b.edges[static_cast<size_t>(e)].type;
  int uo = b.o(e), ut = b.t(e);
  VertexGroupRef oref = vref_of(c, b, uo), tref = vref_of(c, b, ut);
  const GroupElem& fa = b.edges[static_cast<size_t>(e)].alpha;
  GroupElem fw = edge_omega(c, b, e);
  GroupElem aconj = elem_mul(
      c, oref, elem_mul(c, oref, fa, a.alpha_img(ae)), elem_inv(c, oref, fa));
  GroupElem wconj =
      elem_mul(c, tref,
               elem_mul(c, tref, elem_inv(c, tref, fw), a.omega_img(ae)), fw);
  long long k1 = voracle(c, b, uo)->cyclic_exponent(aconj);
  long long k2 = voracle(c, b, ut)->cyclic_exponent(wconj);
  if (k1 == 0 || k2 == 0) return 0;
  return std::lcm(k1, k2);
}

std::optional<FoldWitness> find_unfolded(const ExtensionChain& c,
                                         const AGraph& b) {
  const GraphOfGroups& a = c.graph(b.graph_index);
  // Side exponents: with infinite cyclic edge groups, both condition (II) and
  // the inverse-pair case of condition (I) amount to the two sides of an edge
  // inducing different cyclic exponents; the repair pushes the smaller
  // exponent across the edge.
  for (size_t e = 0; e + 1 < b.edges.size(); e += 2) {
    if (!b.edges[e].alive) continue;
    int f = static_cast<int>(e);
    int ae = b.edges[e].type;
    int uo = b.o(f), ut = b.t(f);
    VertexGroupRef oref = vref_of(c, b, uo), tref = vref_of(c, b, ut);
    const GroupElem& fa = b.edges[e].alpha;
    GroupElem fw = edge_omega(c, b, f);
    GroupElem aconj =
        elem_mul(c, oref, elem_mul(c, oref, fa, a.alpha_img(ae)),
                 elem_inv(c, oref, fa));
    GroupElem wconj =
        elem_mul(c, tref,
                 elem_mul(c, tref, elem_inv(c, tref, fw), a.omega_img(ae)),
                 fw);
    long long k1 = voracle(c, b, uo)->cyclic_exponent(aconj);
    long long k2 = voracle(c, b, ut)->cyclic_exponent(wconj);
    if (k1 == k2) continue;
    FoldWitness w;
    w.what = FoldWitness::What::EdgeGroupMismatch;
    // Source side: the smaller positive exponent.
    bool from_alpha = k2 == 0 || (k1 != 0 && k1 < k2);
    w.f1 = from_alpha ? f : b.inv(f);
    w.u = b.t(w.f1);
    w.n = from_alpha ? k1 : k2;
    GroupElem src = from_alpha ? aconj : wconj;
    GroupElem val = elem_pow(c, from_alpha ? oref : tref, src, w.n);
    w.b = val;
    auto expr = voracle(c, b, b.o(w.f1))->membership(val);
    if (!expr) throw Error("internal: side exponent witness not a member");
    w.b_expr = *expr;
    return w;
  }
  // Condition (I) for a genuine pair of edges through u.
  for (size_t u = 0; u < b.verts.size(); ++u) {
    if (!b.verts[u].alive) continue;
    auto uoracle = voracle(c, b, static_cast<int>(u));
    VertexGroupRef ref = vref_of(c, b, static_cast<int>(u));
    for (size_t f1 = 0; f1 < b.edges.size(); ++f1) {
      if (!b.edges[f1].alive || b.t(static_cast<int>(f1)) != static_cast<int>(u))
        continue;
      for (size_t f2 = 0; f2 < b.edges.size(); ++f2) {
        if (!b.edges[f2].alive ||
            b.o(static_cast<int>(f2)) != static_cast<int>(u))
          continue;
        if (static_cast<int>(f2) == b.inv(static_cast<int>(f1))) continue;
        int e1 = b.edges[f1].type;
        if (b.edges[f2].type != a.inv(e1)) continue;
        GroupElem f1w = edge_omega(c, b, static_cast<int>(f1));
        GroupElem f1wi = elem_inv(c, ref, f1w);
        const GroupElem& f2a = b.edges[f2].alpha;
        GroupElem wtilde = elem_mul(
            c, ref, elem_mul(c, ref, f1wi, a.omega_img(e1)), f1w);
        GroupElem ainv = elem_mul(c, ref, f2a, f1w);
        auto hit = uoracle->coset_intersect_cyclic(ainv, wtilde);
        if (!hit) continue;
        FoldWitness w;
        w.what = FoldWitness::What::MergePair;
        w.u = static_cast<int>(u);
        w.f1 = static_cast<int>(f1);
        w.f2 = static_cast<int>(f2);
        w.b = elem_inv(c, ref, hit->element);
        w.b_expr = hit->expr.inverse();
        w.n = -hit->n;
        return w;
      }
    }
  }
  return std::nullopt;
}

bool is_folded(const ExtensionChain& c, const AGraph& b) {
  return !find_unfolded(c, b).has_value();
}

namespace {

struct MoveResult {
  bool intercepted = false;
  GroupElem y;
};

void apply_push(const ExtensionChain& c, AGraph& b, const FoldWitness& w) {
  const GraphOfGroups& a = c.graph(b.graph_index);
  int f = w.f1;
  int ae = b.edges[static_cast<size_t>(f)].type;
  int ut = b.t(f);
  VertexGroupRef tref = vref_of(c, b, ut);
  GroupElem fw = edge_omega(c, b, f);
  GroupElem val = elem_mul(
      c, tref,
      elem_mul(c, tref, elem_inv(c, tref, fw),
               elem_pow(c, tref, a.omega_img(ae), w.n)),
      fw);
  Word expr = b.edges[static_cast<size_t>(f)].expr.inverse() *
              subst_expr(b, b.o(f), w.b_expr) *
              b.edges[static_cast<size_t>(f)].expr;
  add_gen(c, b, ut, val, expr);
}

MoveResult apply_merge(const ExtensionChain& c, AGraph& b,
                       const FoldWitness& w) {
  const GraphOfGroups& a = c.graph(b.graph_index);
  int u = w.u, f1 = w.f1, f2 = w.f2;
  int u1 = b.o(f1), u2 = b.t(f2);
  int e1 = b.edges[static_cast<size_t>(f1)].type;
  int e2 = a.inv(e1);  // type of f2
  VertexGroupRef uref = vref_of(c, b, u);
  VertexGroupRef oref = vref_of(c, b, u1);  // == type of u2

  if (u1 != u2 && b.distinguished(u1) && b.distinguished(u2)) {
    // The move would identify ux with u0: emit the length-0 coset element
    // y = (f1)_a alpha_e(c^n) (f2)_w instead.
    GroupElem y = elem_mul(
        c, oref,
        elem_mul(c, oref, b.edges[static_cast<size_t>(f1)].alpha,
                 elem_pow(c, oref, a.alpha_img(e1), w.n)),
        edge_omega(c, b, f2));
    if (u1 != b.ux) y = elem_inv(c, oref, y);
    MoveResult r;
    r.intercepted = true;
    r.y = y;
    return r;
  }

  // A1: absorb the witness into f2's alpha label.
  set_alpha(b, f2, elem_mul(c, uref, w.b, b.edges[static_cast<size_t>(f2)].alpha));
  set_edge_expr(b, f2, subst_expr(b, u, w.b_expr) *
                           b.edges[static_cast<size_t>(f2)].expr);
  // A2 by -n: now (f1)_w (f2)_a = 1.
  set_alpha(b, f2,
            elem_mul(c, uref, b.edges[static_cast<size_t>(f2)].alpha,
                     elem_pow(c, uref, a.alpha_img(e2), -w.n)));
  set_alpha(b, b.inv(f2),
            elem_mul(c, oref, b.edges[static_cast<size_t>(b.inv(f2))].alpha,
                     elem_pow(c, oref, a.omega_img(e2), -w.n)));

  if (u1 == u2) {
    GroupElem z = elem_mul(c, oref, b.edges[static_cast<size_t>(f1)].alpha,
                           edge_omega(c, b, f2));
    Word zexpr = b.edges[static_cast<size_t>(f1)].expr *
                 b.edges[static_cast<size_t>(f2)].expr;
    add_gen(c, b, u1, z, zexpr);
    kill_edge_pair(b, f2);
    return {};
  }

  bool forced_u2 = u1 == u;
  bool forced_u1 = u2 == u;
  int side;
  if (forced_u2)
    side = u2;
  else if (forced_u1)
    side = u1;
  else
    side = !b.distinguished(u2) ? u2 : u1;
  GroupElem g;
  int keep, drop;
  if (side == u2) {
    g = elem_mul(c, oref, b.edges[static_cast<size_t>(f1)].alpha,
                 edge_omega(c, b, f2));
    keep = u1;
    drop = u2;
  } else {
    g = elem_mul(c, oref, elem_inv(c, oref, edge_omega(c, b, f2)),
                 elem_inv(c, oref, b.edges[static_cast<size_t>(f1)].alpha));
    keep = u2;
    drop = u1;
  }
  bool restore = b.distinguished(side);
  apply_a0(c, b, side, g);

  // corr evaluates to gamma(keep) * gamma(drop)^{-1}.  The merged vertex
  // keeps the canonical path value of whichever endpoint is distinguished
  // (never both here), so expressions anchored at u0/ux stay valid.
  Word rho = b.edges[static_cast<size_t>(f1)].expr *
             b.edges[static_cast<size_t>(f2)].expr;
  Word corr = keep == u1 ? rho : rho.inverse();
  bool anchor_drop = b.distinguished(drop);
  int fixv = anchor_drop ? keep : drop;
  Word fix = anchor_drop ? corr.inverse() : corr;
  kill_edge_pair(b, f2);
  for (size_t h = 0; h < b.edges.size(); ++h) {
    if (!b.edges[h].alive) continue;
    if (b.edges[h].from == fixv) b.edges[h].expr = fix * b.edges[h].expr;
    if (b.edges[h].to == fixv)
      b.edges[h].expr = b.edges[h].expr * fix.inverse();
  }
  for (auto& ed : b.edges) {
    if (!ed.alive) continue;
    if (ed.from == drop) ed.from = keep;
    if (ed.to == drop) ed.to = keep;
  }
  auto& dv = b.verts[static_cast<size_t>(drop)];
  auto& kv = b.verts[static_cast<size_t>(keep)];
  if (anchor_drop)
    for (auto& ex : kv.exprs) ex = fix * ex * fix.inverse();
  for (size_t i = 0; i < dv.gens.size(); ++i) {
    kv.gens.push_back(dv.gens[i]);
    kv.exprs.push_back(anchor_drop ? dv.exprs[i]
                                   : corr * dv.exprs[i] * corr.inverse());
  }
  dv.gens.clear();
  dv.exprs.clear();
  dv.alive = false;
  if (b.u0 == drop) b.u0 = keep;
  if (b.ux == drop) b.ux = keep;
  if (restore) apply_a0(c, b, keep, elem_inv(c, oref, g));
  return {};
}

}  // namespace

FoldOutcome fold(const ExtensionChain& c, AGraph b) {
  static const bool trace = std::getenv("GFOLD_FOLD_TRACE") != nullptr;
  long long moves = 0;
  trim(c, b);
  while (true) {
    auto w = find_unfolded(c, b);
    if (!w) break;
    if (trace)
      fprintf(stderr, "fold[%lld] %s u=%d f1=%d f2=%d n=%lld\n", moves,
              w->what == FoldWitness::What::MergePair ? "merge" : "push", w->u,
              w->f1, w->f2, w->n);
    if (++moves > c.fold_budget)
      throw GuardError("folding move budget exceeded");
    if (w->what == FoldWitness::What::MergePair) {
      MoveResult r = apply_merge(c, b, *w);
      if (r.intercepted) {
        FoldOutcome out;
        out.y = r.y;
        return out;
      }
    } else {
      apply_push(c, b, *w);
    }
    trim(c, b);
  }
  FoldOutcome out;
  out.graph = std::move(b);
  return out;
}

AGraph start_graph(const ExtensionChain& c, int graph_index, int base_vertex,
                   const std::vector<APath>& gens) {
  AGraph b;
  b.graph_index = graph_index;
  b.nsymbols = static_cast<int>(gens.size());
  AGraph::Vertex v0;
  v0.type = base_vertex;
  b.verts.push_back(v0);
  b.u0 = 0;
  const GraphOfGroups& a = c.graph(graph_index);
  for (size_t i = 0; i < gens.size(); ++i) {
    APath p = path_reduce(c, gens[i]);
    if (p.start != base_vertex || path_end(c, p) != base_vertex)
      throw PreconditionError("subgroup generator is not a loop at the base");
    Word sym = Word::letter(b.nsymbols, static_cast<int>(i) + 1);
    if (p.length() == 0) {
      if (!elem_trivial(c, c.vertex_ref(graph_index, base_vertex),
                        p.elems[0])) {
        b.verts[0].gens.push_back(p.elems[0]);
        b.verts[0].exprs.push_back(sym);
      }
      continue;
    }
    int prev = 0;
    for (int j = 0; j < p.length(); ++j) {
      int tgt;
      if (j + 1 == p.length()) {
        tgt = 0;
      } else {
        AGraph::Vertex w;
        w.type = a.t(p.edges[static_cast<size_t>(j)]);
        b.verts.push_back(w);
        tgt = static_cast<int>(b.verts.size()) - 1;
      }
      AGraph::Edge fwd, bwd;
      fwd.type = p.edges[static_cast<size_t>(j)];
      fwd.from = prev;
      fwd.to = tgt;
      fwd.alpha = p.elems[static_cast<size_t>(j)];
      bwd.type = a.inv(fwd.type);
      bwd.from = tgt;
      bwd.to = prev;
      GroupElem omega = j + 1 == p.length()
                            ? p.elems.back()
                            : elem_identity(c, c.vertex_ref(graph_index, a.t(fwd.type)));
      bwd.alpha = elem_inv(c, c.vertex_ref(graph_index, a.t(fwd.type)), omega);
      fwd.partner = static_cast<int>(b.edges.size()) + 1;
      bwd.partner = static_cast<int>(b.edges.size());
      Word dec = j + 1 == p.length() ? sym : Word::identity(b.nsymbols);
      fwd.expr = dec;
      bwd.expr = dec.inverse();
      b.edges.push_back(fwd);
      b.edges.push_back(bwd);
      prev = tgt;
    }
  }
  return b;
}

AGraph build_subgroup_graph(const ExtensionChain& c, int graph_index,
                            int base_vertex, const std::vector<APath>& gens) {
  AGraph b = start_graph(c, graph_index, base_vertex, gens);
  FoldOutcome out = fold(c, std::move(b));
  if (!out.graph)
    throw Error("internal: subgroup folding intercepted a coset merge");
  return std::move(*out.graph);
}

CosetGraphResult build_coset_graph(const ExtensionChain& c, int graph_index,
                                   int base_vertex,
                                   const std::vector<APath>& gens,
                                   const APath& x) {
  APath px = path_reduce(c, x);
  CosetGraphResult res;
  if (px.length() == 0) {
    res.y = px.elems[0];
    return res;
  }
  AGraph b = start_graph(c, graph_index, base_vertex, gens);
  b.nsymbols = static_cast<int>(gens.size()) + 1;
  for (auto& v : b.verts)
    for (auto& e : v.exprs) e = Word(b.nsymbols, e.letters());
  for (auto& e : b.edges) e.expr = Word(b.nsymbols, e.expr.letters());
  const GraphOfGroups& a = c.graph(graph_index);
  Word xsym = Word::letter(b.nsymbols, b.nsymbols);
  AGraph::Vertex vx;
  vx.type = base_vertex;
  b.verts.push_back(vx);
  int ux = static_cast<int>(b.verts.size()) - 1;
  b.ux = ux;
  int prev = ux;
  for (int j = 0; j < px.length(); ++j) {
    int tgt;
    if (j + 1 == px.length()) {
      tgt = b.u0;
    } else {
      AGraph::Vertex w;
      w.type = a.t(px.edges[static_cast<size_t>(j)]);
      b.verts.push_back(w);
      tgt = static_cast<int>(b.verts.size()) - 1;
    }
    AGraph::Edge fwd, bwd;
    fwd.type = px.edges[static_cast<size_t>(j)];
    fwd.from = prev;
    fwd.to = tgt;
    fwd.alpha = px.elems[static_cast<size_t>(j)];
    bwd.type = a.inv(fwd.type);
    bwd.from = tgt;
    bwd.to = prev;
    GroupElem omega =
        j + 1 == px.length()
            ? px.elems.back()
            : elem_identity(c, c.vertex_ref(graph_index, a.t(fwd.type)));
    bwd.alpha = elem_inv(c, c.vertex_ref(graph_index, a.t(fwd.type)), omega);
    fwd.partner = static_cast<int>(b.edges.size()) + 1;
    bwd.partner = static_cast<int>(b.edges.size());
    Word dec = j + 1 == px.length() ? xsym : Word::identity(b.nsymbols);
    fwd.expr = dec;
    bwd.expr = dec.inverse();
    b.edges.push_back(fwd);
    b.edges.push_back(bwd);
    prev = tgt;
  }
  FoldOutcome out = fold(c, std::move(b));
  if (out.y) {
    res.y = out.y;
    return res;
  }
  res.graph = std::move(out.graph);
  return res;
}

std::optional<BPath> read_membership(const ExtensionChain& c, const AGraph& b,
                                     int from, int to, const APath& p) {
  return sc_first(c, b, p, from, to);
}

PresReader extract_presentation_reader(const ExtensionChain& c,
                                       std::shared_ptr<const AGraph> bp) {
  const AGraph& b = *bp;
  PresReader r;
  r.graph = bp;
  r.vert_offset.assign(b.verts.size(), -1);
  r.voracle.assign(b.verts.size(), nullptr);
  r.stable.assign(b.edges.size(), 0);

  // Breadth-first spanning tree from u0 in edge-id order.
  std::vector<int> parent(b.verts.size(), -1), parent_edge(b.verts.size(), -1);
  std::vector<bool> seen(b.verts.size(), false);
  std::vector<bool> tree_edge(b.edges.size(), false);
  std::deque<int> queue{b.u0};
  seen[static_cast<size_t>(b.u0)] = true;
  std::vector<int> order{b.u0};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (size_t e = 0; e < b.edges.size(); ++e) {
      if (!b.edges[e].alive || b.o(static_cast<int>(e)) != v) continue;
      int w = b.t(static_cast<int>(e));
      if (seen[static_cast<size_t>(w)]) continue;
      seen[static_cast<size_t>(w)] = true;
      parent[static_cast<size_t>(w)] = v;
      parent_edge[static_cast<size_t>(w)] = static_cast<int>(e);
      tree_edge[e] = true;
      tree_edge[static_cast<size_t>(b.inv(static_cast<int>(e)))] = true;
      queue.push_back(w);
      order.push_back(w);
    }
  }

  auto tree_bpath = [&](int v) {
    std::vector<int> es;
    while (v != b.u0) {
      es.push_back(parent_edge[static_cast<size_t>(v)]);
      v = parent[static_cast<size_t>(v)];
    }
    std::reverse(es.begin(), es.end());
    BPath q;
    q.start = b.u0;
    int at = b.u0;
    q.elems.push_back(elem_identity(c, vref_of(c, b, at)));
    for (int e : es) {
      q.edges.push_back(e);
      at = b.t(e);
      q.elems.push_back(elem_identity(c, vref_of(c, b, at)));
    }
    return q;
  };
  auto reverse_bpath = [&](const BPath& q) {
    BPath out;
    out.start = bpath_end(b, q);
    int at = out.start;
    out.elems.push_back(elem_identity(c, vref_of(c, b, at)));
    for (size_t i = q.edges.size(); i-- > 0;) {
      out.edges.push_back(b.inv(q.edges[i]));
      at = b.t(b.inv(q.edges[i]));
      out.elems.push_back(elem_identity(c, vref_of(c, b, at)));
    }
    return out;
  };
  auto loop_value = [&](const BPath& q) {
    return GroupElem(path_reduce(c, mu(c, b, q)));
  };

  // Vertex-group generators, in tree order.
  for (int v : order) {
    auto oracle = voracle(c, b, v);
    r.voracle[static_cast<size_t>(v)] = oracle;
    const auto& lp = oracle->local_presentation();
    r.vert_offset[static_cast<size_t>(v)] =
        static_cast<int>(r.pres.gens.size());
    BPath to_v = tree_bpath(v);
    BPath back = reverse_bpath(to_v);
    for (auto& val : lp.values) {
      BPath loop = to_v;
      loop.elems.back() = val;
      BPath whole = loop;
      whole.elems.insert(whole.elems.end(), back.elems.begin() + 1,
                         back.elems.end());
      whole.edges.insert(whole.edges.end(), back.edges.begin(),
                         back.edges.end());
      GroupElem value = loop_value(whole);
      r.values.push_back(value);
      r.pres.gens.push_back(
          {"g" + std::to_string(r.pres.gens.size() + 1),
           elem_str(c, VertexGroupRef::pi(b.graph_index), value)});
    }
  }
  // Stable letters for non-tree edge pairs.
  for (size_t e = 0; e + 1 < b.edges.size(); e += 2) {
    if (!b.edges[e].alive || tree_edge[e]) continue;
    int f = static_cast<int>(e);
    if (!seen[static_cast<size_t>(b.o(f))]) continue;  // detached component
    BPath to_o = tree_bpath(b.o(f));
    BPath back = reverse_bpath(tree_bpath(b.t(f)));
    BPath whole = to_o;
    whole.edges.push_back(f);
    whole.elems.push_back(elem_identity(c, vref_of(c, b, b.t(f))));
    whole.elems.insert(whole.elems.end(), back.elems.begin() + 1,
                       back.elems.end());
    whole.edges.insert(whole.edges.end(), back.edges.begin(),
                       back.edges.end());
    GroupElem value = loop_value(whole);
    r.values.push_back(value);
    r.pres.gens.push_back(
        {"g" + std::to_string(r.pres.gens.size() + 1),
         elem_str(c, VertexGroupRef::pi(b.graph_index), value)});
    r.stable[e] = static_cast<int>(r.pres.gens.size());
    r.stable[static_cast<size_t>(b.inv(f))] = -static_cast<int>(r.pres.gens.size());
  }
  int ngens = static_cast<int>(r.pres.gens.size());

  auto shift_local = [&](int v, const Word& local) {
    int off = r.vert_offset[static_cast<size_t>(v)];
    std::vector<int> ls;
    for (int l : local.letters())
      ls.push_back(l > 0 ? l + off : l - off);
    return Word(ngens, ls);
  };

  // Vertex relators.
  for (int v : order) {
    const auto& lp = r.voracle[static_cast<size_t>(v)]->local_presentation();
    for (auto& rel : lp.relators)
      r.pres.relators.push_back(shift_local(v, rel));
  }
  // Edge relations: t_f^{-1} i_o(f_a alpha^k f_a^{-1}) t_f = i_t(f_w^{-1} omega^k f_w).
  const GraphOfGroups& a = c.graph(b.graph_index);
  for (size_t e = 0; e + 1 < b.edges.size(); e += 2) {
    if (!b.edges[e].alive) continue;
    int f = static_cast<int>(e);
    if (!seen[static_cast<size_t>(b.o(f))]) continue;
    long long k = edge_group(c, b, f);
    if (k == 0) continue;
    int ae = b.edges[e].type;
    int uo = b.o(f), ut = b.t(f);
    VertexGroupRef oref = vref_of(c, b, uo), tref = vref_of(c, b, ut);
    const GroupElem& fa = b.edges[e].alpha;
    GroupElem fw = edge_omega(c, b, f);
    GroupElem za =
        elem_mul(c, oref,
                 elem_mul(c, oref, fa, elem_pow(c, oref, a.alpha_img(ae), k)),
                 elem_inv(c, oref, fa));
    GroupElem zw = elem_mul(
        c, tref,
        elem_mul(c, tref, elem_inv(c, tref, fw),
                 elem_pow(c, tref, a.omega_img(ae), k)),
        fw);
    auto ea = r.voracle[static_cast<size_t>(uo)]->express_local(za);
    auto ew = r.voracle[static_cast<size_t>(ut)]->express_local(zw);
    if (!ea || !ew)
      throw Error("internal: edge-group power failed local expression");
    Word lhs = shift_local(uo, *ea);
    Word rhs = shift_local(ut, *ew);
    Word rel = Word::identity(ngens);
    int s = r.stable[e];
    if (s != 0) rel = Word::letter(ngens, s).inverse();
    rel = rel * lhs;
    if (s != 0) rel = rel * Word::letter(ngens, s);
    rel = rel * rhs.inverse();
    if (!rel.trivial()) r.pres.relators.push_back(rel);
  }
  return r;
}

std::optional<Word> reader_express(const ExtensionChain& c,
                                   const PresReader& r, const BPath& q) {
  (void)c;
  const AGraph& b = *r.graph;
  int ngens = r.pres.rank();
  Word out = Word::identity(ngens);
  int at = q.start;
  for (size_t i = 0; i < q.elems.size(); ++i) {
    auto local = r.voracle[static_cast<size_t>(at)]->express_local(q.elems[i]);
    if (!local) return std::nullopt;
    int off = r.vert_offset[static_cast<size_t>(at)];
    for (int l : local->letters())
      out = out * Word::letter(ngens, l > 0 ? l + off : l - off);
    if (i < q.edges.size()) {
      int e = q.edges[i];
      int s = r.stable[static_cast<size_t>(e)];
      if (s != 0) out = out * Word::letter(ngens, s);
      at = b.t(e);
    }
  }
  return out;
}

Presentation extract_presentation(const ExtensionChain& c, const AGraph& b) {
  auto bp = std::make_shared<const AGraph>(b);
  return extract_presentation_reader(c, bp).pres;
}

std::string AGraph::to_text(const ExtensionChain& c) const {
  std::ostringstream os;
  os << "agraph over graph " << graph_index << " u0=v" << u0;
  if (ux >= 0) os << " ux=v" << ux;
  os << "\n";
  for (size_t v = 0; v < verts.size(); ++v) {
    if (!verts[v].alive) continue;
    os << "v" << v << " type=" << verts[v].type << " gens={";
    for (size_t i = 0; i < verts[v].gens.size(); ++i) {
      if (i) os << ", ";
      os << elem_str(c, c.vertex_ref(graph_index, verts[v].type),
                     verts[v].gens[i]);
    }
    os << "}\n";
  }
  for (size_t e = 0; e + 1 < edges.size(); e += 2) {
    if (!edges[e].alive) continue;
    int f = static_cast<int>(e);
    os << "f" << e / 2 + 1 << " v" << o(f) << " -> v" << t(f) << " type=e"
       << edges[e].type << " alpha="
       << elem_str(c, c.vertex_ref(graph_index, verts[static_cast<size_t>(o(f))].type),
                   edges[e].alpha)
       << " omega="
       << elem_str(c, c.vertex_ref(graph_index, verts[static_cast<size_t>(t(f))].type),
                   edge_omega(c, *this, f))
       << "\n";
  }
  return os.str();
}

}  // namespace gfold
