#include "gfold/gog.hpp"

#include <algorithm>
#include <sstream>

#include "gfold/chain.hpp"
#include "gfold/errors.hpp"

namespace gfold {

std::string VertexGroupRef::str() const {
  switch (kind) {
    case Kind::Free:
      return "F" + std::to_string(param);
    case Kind::Abelian:
      return "Z" + std::to_string(param);
    case Kind::Pi:
      return "P" + std::to_string(param);
  }
  return "?";
}

GroupElem::GroupElem(APath p)
    : v_(std::make_shared<const APath>(std::move(p))) {}

const APath& GroupElem::path() const {
  return *std::get<std::shared_ptr<const APath>>(v_);
}

// --- element operations ---

GroupElem elem_identity(const ExtensionChain& c, const VertexGroupRef& ref) {
  switch (ref.kind) {
    case VertexGroupRef::Kind::Free:
      return GroupElem(Word::identity(ref.param));
    case VertexGroupRef::Kind::Abelian:
      return GroupElem(AbVec::zero(ref.param));
    case VertexGroupRef::Kind::Pi:
      return GroupElem(path_identity(c, ref.param, 0));
  }
  throw Error("bad ref");
}

GroupElem elem_mul(const ExtensionChain& c, const VertexGroupRef& ref,
                   const GroupElem& a, const GroupElem& b) {
  switch (ref.kind) {
    case VertexGroupRef::Kind::Free:
      return GroupElem(a.word() * b.word());
    case VertexGroupRef::Kind::Abelian:
      return GroupElem(a.vec() + b.vec());
    case VertexGroupRef::Kind::Pi:
      return GroupElem(path_mul(c, a.path(), b.path()));
  }
  throw Error("bad ref");
}

GroupElem elem_inv(const ExtensionChain& c, const VertexGroupRef& ref,
                   const GroupElem& a) {
  switch (ref.kind) {
    case VertexGroupRef::Kind::Free:
      return GroupElem(a.word().inverse());
    case VertexGroupRef::Kind::Abelian:
      return GroupElem(-a.vec());
    case VertexGroupRef::Kind::Pi:
      return GroupElem(path_inv(c, a.path()));
  }
  throw Error("bad ref");
}

GroupElem elem_pow(const ExtensionChain& c, const VertexGroupRef& ref,
                   const GroupElem& a, long long n) {
  switch (ref.kind) {
    case VertexGroupRef::Kind::Free:
      return GroupElem(a.word().pow(n));
    case VertexGroupRef::Kind::Abelian:
      return GroupElem(a.vec() * n);
    case VertexGroupRef::Kind::Pi:
      return GroupElem(path_pow(c, a.path(), n));
  }
  throw Error("bad ref");
}

bool elem_trivial(const ExtensionChain& c, const VertexGroupRef& ref,
                  const GroupElem& a) {
  switch (ref.kind) {
    case VertexGroupRef::Kind::Free:
      return a.word().trivial();
    case VertexGroupRef::Kind::Abelian:
      return a.vec().is_zero();
    case VertexGroupRef::Kind::Pi:
      return path_is_trivial(c, a.path());
  }
  throw Error("bad ref");
}

bool elem_equal(const ExtensionChain& c, const VertexGroupRef& ref,
                const GroupElem& a, const GroupElem& b) {
  return elem_trivial(c, ref, elem_mul(c, ref, elem_inv(c, ref, a), b));
}

std::optional<long long> elem_power_of(const ExtensionChain& c,
                                       const VertexGroupRef& ref,
                                       const GroupElem& a,
                                       const GroupElem& base) {
  switch (ref.kind) {
    case VertexGroupRef::Kind::Free:
      return a.word().power_of(base.word());
    case VertexGroupRef::Kind::Abelian:
      return a.vec().multiple_of(base.vec());
    case VertexGroupRef::Kind::Pi:
      return path_power_of(c, a.path(), base.path());
  }
  throw Error("bad ref");
}

std::string elem_str(const ExtensionChain& c, const VertexGroupRef& ref,
                     const GroupElem& a) {
  switch (ref.kind) {
    case VertexGroupRef::Kind::Free:
      return a.word().str(c.base_names());
    case VertexGroupRef::Kind::Abelian:
      return a.vec().str();
    case VertexGroupRef::Kind::Pi:
      return c.print_element(ref.param + 1, a);
  }
  throw Error("bad ref");
}

// --- path operations ---

APath path_identity(const ExtensionChain& c, int graph, int vertex) {
  APath p;
  p.graph = graph;
  p.start = vertex;
  p.elems.push_back(elem_identity(c, c.vertex_ref(graph, vertex)));
  return p;
}

APath make_path(const ExtensionChain& c, int graph, int start,
                std::vector<GroupElem> elems, std::vector<int> edges) {
  APath p;
  p.graph = graph;
  p.start = start;
  p.elems = std::move(elems);
  p.edges = std::move(edges);
  check_path(c, p);
  return p;
}

void check_path(const ExtensionChain& c, const APath& p) {
  const GraphOfGroups& g = c.graph(p.graph);
  if (p.elems.size() != p.edges.size() + 1)
    throw PreconditionError("path has mismatched element/edge counts");
  int at = p.start;
  for (size_t i = 0; i < p.edges.size(); ++i) {
    int e = p.edges[i];
    if (g.o(e) != at) throw PreconditionError("path edges do not compose");
    at = g.t(e);
  }
}

int path_end(const ExtensionChain& c, const APath& p) {
  const GraphOfGroups& g = c.graph(p.graph);
  int at = p.start;
  for (int e : p.edges) at = g.t(e);
  return at;
}

APath path_reduce(const ExtensionChain& c, const APath& p0) {
  const GraphOfGroups& g = c.graph(p0.graph);
  APath p = p0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < p.edges.size(); ++i) {
      int e = p.edges[i];
      if (p.edges[i + 1] != g.inv(e)) continue;
      VertexGroupRef tref = c.vertex_ref(p.graph, g.t(e));
      auto n = elem_power_of(c, tref, p.elems[i + 1], g.omega_img(e));
      if (!n) continue;
      VertexGroupRef oref = c.vertex_ref(p.graph, g.o(e));
      GroupElem mid = elem_mul(
          c, oref, p.elems[i],
          elem_mul(c, oref, elem_pow(c, oref, g.alpha_img(e), *n),
                   p.elems[i + 2]));
      p.elems.erase(p.elems.begin() + static_cast<long>(i) + 1,
                    p.elems.begin() + static_cast<long>(i) + 3);
      p.elems[i] = mid;
      p.edges.erase(p.edges.begin() + static_cast<long>(i),
                    p.edges.begin() + static_cast<long>(i) + 2);
      changed = true;
      break;
    }
  }
  return p;
}

APath path_mul(const ExtensionChain& c, const APath& a, const APath& b) {
  if (a.graph != b.graph)
    throw PreconditionError("path multiplication across different graphs");
  if (path_end(c, a) != b.start)
    throw PreconditionError("path endpoints do not compose");
  APath out;
  out.graph = a.graph;
  out.start = a.start;
  out.elems = a.elems;
  VertexGroupRef jref = c.vertex_ref(a.graph, b.start);
  out.elems.back() = elem_mul(c, jref, out.elems.back(), b.elems.front());
  out.elems.insert(out.elems.end(), b.elems.begin() + 1, b.elems.end());
  out.edges = a.edges;
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  return path_reduce(c, out);
}

APath path_inv(const ExtensionChain& c, const APath& a) {
  const GraphOfGroups& g = c.graph(a.graph);
  APath out;
  out.graph = a.graph;
  out.start = path_end(c, a);
  int at = a.start;
  std::vector<int> verts{at};
  for (int e : a.edges) {
    at = g.t(e);
    verts.push_back(at);
  }
  for (size_t i = a.elems.size(); i-- > 0;) {
    out.elems.push_back(
        elem_inv(c, c.vertex_ref(a.graph, verts[i]), a.elems[i]));
    if (i > 0) out.edges.push_back(g.inv(a.edges[i - 1]));
  }
  return out;
}

APath path_pow(const ExtensionChain& c, const APath& a, long long n) {
  if (path_end(c, a) != a.start)
    throw PreconditionError("powering a non-loop path");
  APath base = n < 0 ? path_inv(c, a) : a;
  long long k = n < 0 ? -n : n;
  APath acc = path_identity(c, a.graph, a.start);
  for (long long i = 0; i < k; ++i) acc = path_mul(c, acc, base);
  return acc;
}

bool path_is_trivial(const ExtensionChain& c, const APath& p) {
  if (path_end(c, p) != p.start) return false;
  APath r = path_reduce(c, p);
  if (r.length() != 0) return false;
  return elem_trivial(c, c.vertex_ref(p.graph, r.start), r.elems[0]);
}

bool path_equal(const ExtensionChain& c, const APath& a, const APath& b) {
  if (a.start != b.start || path_end(c, a) != path_end(c, b)) return false;
  return path_is_trivial(c, path_mul(c, a, path_inv(c, b)));
}

APath power_path(const ExtensionChain& c, const APath& p, long long m) {
  if (m == 0) throw PreconditionError("power_path with zero exponent");
  if (path_end(c, p) != p.start)
    throw PreconditionError("power_path on a non-loop");
  APath base = p;
  if (m < 0) base = path_inv(c, p);
  long long k = m < 0 ? -m : m;
  if (base.length() == 0) {
    APath out = base;
    out.elems[0] = elem_pow(c, c.vertex_ref(p.graph, p.start), base.elems[0],
                            static_cast<long long>(k));
    return out;
  }
  // Literal concatenation with the wrap element p_n p_0 at the seams.
  VertexGroupRef bref = c.vertex_ref(p.graph, p.start);
  GroupElem wrap = elem_mul(c, bref, base.elems.back(), base.elems.front());
  APath out;
  out.graph = base.graph;
  out.start = base.start;
  out.elems.push_back(base.elems.front());
  for (long long rep = 0; rep < k; ++rep) {
    for (int i = 0; i < base.length(); ++i) {
      out.edges.push_back(base.edges[static_cast<size_t>(i)]);
      bool seam = i + 1 == base.length() && rep + 1 < k;
      out.elems.push_back(seam ? wrap : base.elems[static_cast<size_t>(i) + 1]);
    }
  }
  return out;
}

std::pair<APath, APath> cyclically_reduce(const ExtensionChain& c,
                                          const APath& p0) {
  if (path_end(c, p0) != p0.start)
    throw PreconditionError("cyclic reduction of a non-loop");
  const GraphOfGroups& g = c.graph(p0.graph);
  APath q = path_reduce(c, p0);
  APath conj = path_identity(c, p0.graph, p0.start);
  while (q.length() >= 2 && q.edges.back() == g.inv(q.edges.front())) {
    int en = q.edges.back();
    VertexGroupRef bref = c.vertex_ref(q.graph, q.start);
    GroupElem z = elem_mul(c, bref, q.elems.back(), q.elems.front());
    auto n = elem_power_of(c, bref, z, g.omega_img(en));
    if (!n) break;
    int e1 = q.edges.front();
    APath hop;
    hop.graph = q.graph;
    hop.start = q.start;
    hop.elems = {q.elems.front(),
                 elem_identity(c, c.vertex_ref(q.graph, g.t(e1)))};
    hop.edges = {e1};
    conj = path_mul(c, conj, hop);
    APath next;
    next.graph = q.graph;
    next.start = g.t(e1);
    next.elems.assign(q.elems.begin() + 1, q.elems.end() - 1);
    next.edges.assign(q.edges.begin() + 1, q.edges.end() - 1);
    VertexGroupRef oref = c.vertex_ref(q.graph, g.o(en));
    next.elems.back() = elem_mul(c, oref, next.elems.back(),
                                 elem_pow(c, oref, g.alpha_img(en), *n));
    q = next;
  }
  return {q, conj};
}

std::optional<long long> path_power_of(const ExtensionChain& c, const APath& p,
                                       const APath& base) {
  if (path_is_trivial(c, p)) return 0;
  auto [core, conj] = cyclically_reduce(c, base);
  APath d =
      path_reduce(c, path_mul(c, path_inv(c, conj), path_mul(c, p, conj)));
  if (core.length() == 0) {
    VertexGroupRef vref = c.vertex_ref(core.graph, core.start);
    if (elem_trivial(c, vref, core.elems[0])) return std::nullopt;
    if (d.length() != 0) return std::nullopt;
    auto n = elem_power_of(c, vref, d.elems[0], core.elems[0]);
    if (n && *n == 0) return std::nullopt;  // d nontrivial here
    return n;
  }
  if (d.length() == 0 || d.length() % core.length() != 0) return std::nullopt;
  long long n = d.length() / core.length();
  if (path_equal(c, d, power_path(c, core, n))) return n;
  if (path_equal(c, d, power_path(c, core, -n))) return -n;
  return std::nullopt;
}

std::string path_str(const ExtensionChain& c, const APath& p) {
  const GraphOfGroups& g = c.graph(p.graph);
  std::ostringstream os;
  int at = p.start;
  os << elem_str(c, c.vertex_ref(p.graph, at), p.elems[0]);
  for (size_t i = 0; i < p.edges.size(); ++i) {
    int e = p.edges[i];
    int pair_id = std::min(e, g.inv(e));
    os << " ; e" << pair_id / 2 + 1;
    if (e > g.inv(e)) os << "^-1";
    os << " ; ";
    at = g.t(e);
    os << elem_str(c, c.vertex_ref(p.graph, at), p.elems[i + 1]);
  }
  return os.str();
}

APath parse_path(const ExtensionChain& c, int graph, int start,
                 const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  const GraphOfGroups& g = c.graph(graph);
  APath p;
  p.graph = graph;
  p.start = start;
  int at = start;
  for (size_t i = 0; i < parts.size(); ++i) {
    std::string tok = parts[i];
    auto strip = [](std::string s) {
      size_t a = s.find_first_not_of(" \t");
      if (a == std::string::npos) return std::string();
      size_t b = s.find_last_not_of(" \t");
      return s.substr(a, b - a + 1);
    };
    tok = strip(tok);
    if (i % 2 == 0) {
      VertexGroupRef ref = c.vertex_ref(graph, at);
      GroupElem e;
      if (ref.kind == VertexGroupRef::Kind::Abelian)
        e = GroupElem(parse_abvec(tok));
      else if (ref.kind == VertexGroupRef::Kind::Free)
        e = GroupElem(parse_word(tok, ref.param));
      else
        e = c.parse_element(ref.param + 1, tok);
      p.elems.push_back(e);
    } else {
      bool invd = false;
      if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
        invd = true;
        tok = tok.substr(0, tok.size() - 3);
      }
      if (tok.empty() || tok[0] != 'e')
        throw ParseError("expected edge atom, got '" + tok + "'");
      int pair_id = std::atoi(tok.c_str() + 1);
      int e = (pair_id - 1) * 2 + (invd ? 1 : 0);
      if (e < 0 || e >= static_cast<int>(g.edges.size()))
        throw ParseError("edge out of range in path literal");
      if (g.o(e) != at) throw ParseError("path edges do not compose");
      p.edges.push_back(e);
      at = g.t(e);
    }
  }
  check_path(c, p);
  return p;
}

}  // namespace gfold
