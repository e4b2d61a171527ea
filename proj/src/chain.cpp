#include "gfold/chain.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gfold/agraph.hpp"
#include "gfold/errors.hpp"
#include "gfold/oracle.hpp"

namespace gfold {

VertexGroupRef ExtensionChain::group_ref(int level) const {
  if (level == 0) return VertexGroupRef::free_group(base_rank_);
  return VertexGroupRef::pi(level - 1);
}

VertexGroupRef ExtensionChain::vertex_ref(int graph_idx, int vertex) const {
  return graph(graph_idx).verts.at(static_cast<size_t>(vertex));
}

ExtensionChain ExtensionChain::build(int base_rank,
                                     const std::vector<LevelSpec>& specs) {
  if (base_rank < 1) throw ParseError("base rank must be at least 1");
  ExtensionChain c;
  c.base_rank_ = base_rank;
  c.base_names_ = default_letter_names(base_rank);
  for (auto& s : specs) c.add_level(s.center_text, s.extra_rank);
  return c;
}

void ExtensionChain::add_level(const std::string& center_text,
                               int extra_rank) {
  if (extra_rank < 1) throw ParseError("extension rank must be at least 1");
  int level = levels();
  GroupElem g = parse_element(level, center_text);
  g = reduce(level, g);
  validate_center(level, g, center_text);
  GraphOfGroups gog;
  gog.verts.push_back(group_ref(level));
  gog.verts.push_back(VertexGroupRef::abelian(extra_rank + 1));
  GraphOfGroups::HalfEdge fwd;
  fwd.from = 0;
  fwd.to = 1;
  fwd.partner = 1;
  fwd.alpha_img = g;
  GraphOfGroups::HalfEdge bwd;
  bwd.from = 1;
  bwd.to = 0;
  bwd.partner = 0;
  bwd.alpha_img = GroupElem(AbVec::unit(extra_rank + 1, 1));
  gog.edges.push_back(fwd);
  gog.edges.push_back(bwd);
  graphs_.push_back(std::move(gog));
  centers_.push_back(g);
  extra_ranks_.push_back(extra_rank);
}

void ExtensionChain::validate_center(int level, const GroupElem& g,
                                     const std::string& text) {
  std::string where = "level=" + std::to_string(level + 1);
  if (elem_trivial(*this, group_ref(level), g))
    throw ParseError("center '" + text + "' is trivial");
  if (level == 0) {
    if (g.word().is_proper_power())
      throw ParseError("center '" + text +
                       "' is a proper power; its centralizer is not "
                       "generated by it");
    notes_.push_back("PASS center-root-free " + where);
    return;
  }
  auto [core, conj] = cyclically_reduce(*this, g.path());
  (void)conj;
  if (core.length() == 0) {
    VertexGroupRef vref = vertex_ref(core.graph, core.start);
    if (vref.kind == VertexGroupRef::Kind::Abelian)
      throw ParseError("center '" + text +
                       "' is conjugate into an abelian vertex group; its "
                       "centralizer is not cyclic");
    // Elliptic center on the lower-group side: recurse on the value.
    GroupElem val = core.elems[0];
    validate_center(level - 1, val, text);
    if (level - 1 == 0) {
      // Exact check that the value is not conjugate to a power of the
      // previous center (else the centralizer grows abelian).
      const Word prev = centers_[static_cast<size_t>(level - 1)].word();
      auto [pc, pcore] = prev.cyclic_reduce();
      (void)pc;
      auto [vc, vcore] = val.word().cyclic_reduce();
      (void)vc;
      if (vcore.length() % pcore.length() == 0 && vcore.length() > 0) {
        long long k = vcore.length() / pcore.length();
        Word pk = pcore.pow(k);
        for (int rot = 0; rot < vcore.length(); ++rot) {
          std::vector<int> r;
          for (int i = 0; i < vcore.length(); ++i)
            r.push_back(vcore.letters()[static_cast<size_t>(
                (i + rot) % vcore.length())]);
          if (Word(vcore.rank(), r) == pk || Word(vcore.rank(), r) == pk.inverse())
            throw ParseError("center '" + text +
                             "' is conjugate into the previous edge group; "
                             "its centralizer is not cyclic");
        }
      }
      notes_.push_back("PASS center-not-into-edge-group " + where);
    } else {
      notes_.push_back("ASSUME center-not-into-edge-group " + where);
    }
    return;
  }
  // Hyperbolic center: a k-th root would be the aligned prefix subpath.
  const GraphOfGroups& gg = graph(core.graph);
  for (int k = 2; k <= core.length(); ++k) {
    if (core.length() % k != 0) continue;
    int sub = core.length() / k;
    int at = core.start;
    for (int i = 0; i < sub; ++i) at = gg.t(core.edges[static_cast<size_t>(i)]);
    if (at != core.start) continue;
    APath cand;
    cand.graph = core.graph;
    cand.start = core.start;
    cand.elems.assign(core.elems.begin(), core.elems.begin() + sub + 1);
    cand.edges.assign(core.edges.begin(), core.edges.begin() + sub);
    VertexGroupRef bref = vertex_ref(core.graph, core.start);
    cand.elems.back() =
        elem_mul(*this, bref, core.elems[static_cast<size_t>(sub)],
                 elem_inv(*this, bref, core.elems[0]));
    if (path_equal(*this, power_path(*this, cand, k), core))
      throw ParseError("center '" + text + "' is a proper power (exponent " +
                       std::to_string(k) + ")");
  }
  notes_.push_back("PASS center-root-free " + where);
}

ExtensionChain ExtensionChain::parse_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int base = -1;
  std::vector<LevelSpec> specs;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "base") {
      if (!(ls >> base)) throw ParseError("chain file: bad base line");
    } else if (kw == "extend") {
      std::string rest;
      std::getline(ls, rest);
      auto gpos = rest.find("g=");
      auto rpos = rest.find("rank");
      if (gpos == std::string::npos || rpos == std::string::npos || rpos < gpos)
        throw ParseError("chain file: extend line needs g=<word> rank <r>");
      LevelSpec s;
      s.center_text = rest.substr(gpos + 2, rpos - gpos - 2);
      std::istringstream rs(rest.substr(rpos + 4));
      if (!(rs >> s.extra_rank))
        throw ParseError("chain file: bad rank in extend line");
      specs.push_back(s);
    } else {
      throw ParseError("chain file: unknown keyword '" + kw + "'");
    }
  }
  if (base < 1) throw ParseError("chain file: missing base line");
  return build(base, specs);
}

ExtensionChain ExtensionChain::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open chain file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return parse_text(os.str());
}

int ExtensionChain::letter_count(int level) const {
  int n = base_rank_;
  for (int j = 0; j < level; ++j) n += extra_rank(j);
  return n;
}

std::string ExtensionChain::letter_name(int level, int idx) const {
  if (idx <= base_rank_) return base_names_[static_cast<size_t>(idx) - 1];
  int rem = idx - base_rank_;
  for (int j = 0; j < level; ++j) {
    if (rem <= extra_rank(j))
      return "t" + std::to_string(j + 1) + "." + std::to_string(rem);
    rem -= extra_rank(j);
  }
  throw PreconditionError("letter index out of range");
}

GroupElem ExtensionChain::letter_elem(int level, int idx) const {
  if (idx <= base_rank_)
    return embed(0, level, GroupElem(Word::letter(base_rank_, idx)));
  int rem = idx - base_rank_;
  for (int j = 0; j < level; ++j) {
    if (rem <= extra_rank(j)) {
      APath p;
      p.graph = j;
      p.start = 0;
      p.elems.push_back(elem_identity(*this, group_ref(j)));
      p.edges.push_back(0);
      p.elems.push_back(GroupElem(AbVec::unit(extra_rank(j) + 1, rem + 1)));
      p.edges.push_back(1);
      p.elems.push_back(elem_identity(*this, group_ref(j)));
      return embed(j + 1, level, GroupElem(p));
    }
    rem -= extra_rank(j);
  }
  throw PreconditionError("letter index out of range");
}

GroupElem ExtensionChain::embed(int from_level, int to_level,
                                const GroupElem& e) const {
  GroupElem out = e;
  for (int lev = from_level; lev < to_level; ++lev) {
    APath p;
    p.graph = lev;
    p.start = 0;
    p.elems.push_back(out);
    out = GroupElem(p);
  }
  return out;
}

GroupElem ExtensionChain::reduce(int level, const GroupElem& e) const {
  if (level == 0) return e;
  return GroupElem(path_reduce(*this, e.path()));
}

bool ExtensionChain::word_problem(int level, const GroupElem& e) const {
  return elem_trivial(*this, group_ref(level), e);
}

bool ExtensionChain::word_problem(int level, const std::string& text) const {
  return word_problem(level, parse_element(level, text));
}

GroupElem ExtensionChain::parse_element(int level,
                                        const std::string& text) const {
  int nletters = letter_count(level);
  auto resolve = [&](const std::string& name) -> int {
    for (int i = 1; i <= nletters; ++i)
      if (letter_name(level, i) == name) return i;
    // Aliases: g<i>/x<i> for base letters, t -> t1.1, t<j> -> t<j>.1.
    if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'g')) {
      int idx = std::atoi(name.c_str() + 1);
      if (idx >= 1 && idx <= base_rank_) return idx;
    }
    if (name == "t" && level >= 1) return base_rank_ + 1;
    if (name.size() >= 2 && name[0] == 't' &&
        name.find('.') == std::string::npos) {
      int j = std::atoi(name.c_str() + 1);
      if (j >= 1 && j <= level) {
        int idx = base_rank_ + 1;
        for (int jj = 0; jj < j - 1; ++jj) idx += extra_rank(jj);
        return idx;
      }
    }
    return 0;
  };
  // Tokenize as in parse_word but build chain elements.
  GroupElem acc = elem_identity(*this, group_ref(level));
  std::istringstream is(text);
  std::string tok;
  VertexGroupRef ref = group_ref(level);
  while (is >> tok) {
    long long e = 1;
    std::string name = tok;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      try {
        e = std::stoll(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw ParseError("malformed exponent in '" + tok + "'");
      }
    }
    if (name == "1") continue;
    int idx = resolve(name);
    if (idx == 0) throw ParseError("unknown letter '" + name + "'");
    acc = elem_mul(*this, ref, acc, elem_pow(*this, ref, letter_elem(level, idx), e));
  }
  return acc;
}

std::string ExtensionChain::print_element(int level,
                                          const GroupElem& e) const {
  if (level == 0) return e.word().str(base_names_);
  APath p = path_reduce(*this, e.path());
  if (p.start != 0)
    return path_str(*this, p);  // loops off the main vertex print as paths
  std::ostringstream os;
  bool emitted = false;
  auto emit = [&](const std::string& s) {
    if (s.empty() || s == "1") return;
    if (emitted) os << ' ';
    os << s;
    emitted = true;
  };
  int gidx = p.graph;
  GroupElem prefix = p.elems[0];
  size_t i = 1;
  while (i < p.elems.size()) {
    // Syllable: e+ (0->1), abelian value, e- (1->0).
    const AbVec& v = p.elems[i].vec();
    long long gpow = v.c[0];
    prefix = elem_mul(*this, group_ref(level - 1), prefix,
                      elem_pow(*this, group_ref(level - 1),
                               center(gidx), gpow));
    emit(print_element(level - 1, prefix));
    for (int s = 1; s < v.rank(); ++s) {
      if (v.c[static_cast<size_t>(s)] != 0) {
        std::ostringstream ts;
        ts << 't' << gidx + 1 << '.' << s;
        if (v.c[static_cast<size_t>(s)] != 1)
          ts << '^' << v.c[static_cast<size_t>(s)];
        emit(ts.str());
      }
    }
    prefix = p.elems[i + 1];
    i += 2;
  }
  emit(print_element(level - 1, prefix));
  if (!emitted) return "1";
  return os.str();
}

AbVec ExtensionChain::abelianize(int level, const GroupElem& e) const {
  AbVec out = AbVec::zero(abelian_rank());
  if (level == 0) {
    for (int l : e.word().letters()) {
      int idx = std::abs(l) - 1;
      out.c[static_cast<size_t>(idx)] += l > 0 ? 1 : -1;
    }
    return out;
  }
  const APath& p = e.path();
  int gidx = p.graph;
  int offset = base_rank_;
  for (int j = 0; j < gidx; ++j) offset += extra_rank(j);
  // Walk the path, dispatching on the vertex at each stop.
  const GraphOfGroups& g = graph(gidx);
  int at = p.start;
  for (size_t i = 0; i < p.elems.size(); ++i) {
    if (at == 0) {
      out = out + abelianize(level - 1, p.elems[i]);
    } else {
      const AbVec& v = p.elems[i].vec();
      out = out + abelianize(level - 1, center(gidx)) * v.c[0];
      for (int s = 1; s < v.rank(); ++s)
        out.c[static_cast<size_t>(offset + s - 1)] += v.c[static_cast<size_t>(s)];
    }
    if (i < p.edges.size()) at = g.t(p.edges[i]);
  }
  return out;
}

int ExtensionChain::abelian_rank() const {
  int n = base_rank_;
  for (int j = 0; j < levels(); ++j) n += extra_rank(j);
  return n;
}

std::shared_ptr<VertexOracle> ExtensionChain::oracle(
    const VertexGroupRef& ref, const std::vector<GroupElem>& gens) const {
  std::string key = ref.str() + "|";
  for (auto& g : gens) key += elem_str(*this, ref, g) + "|";
  auto it = oracle_cache_.find(key);
  if (it != oracle_cache_.end()) return it->second;
  auto o = std::make_shared<VertexOracle>(*this, ref, gens);
  oracle_cache_.emplace(std::move(key), o);
  return o;
}

Presentation ExtensionChain::subgroup_presentation(
    int level, const std::vector<GroupElem>& gens) const {
  if (level == 0) {
    std::vector<Word> ws;
    for (auto& g : gens) ws.push_back(g.word());
    auto aut = StallingsAutomaton::build(base_rank_, ws);
    Presentation pres;
    int i = 0;
    for (auto& b : aut.tree_basis())
      pres.gens.push_back(
          {"g" + std::to_string(++i), b.str(base_names_)});
    return pres;
  }
  std::vector<APath> paths;
  for (auto& g : gens)
    paths.push_back(path_reduce(*this, g.path()));
  AGraph b = build_subgroup_graph(*this, level - 1, 0, paths);
  Presentation pres = extract_presentation(*this, b);
  pres.simplify();
  return pres;
}

Presentation ExtensionChain::subgroup_presentation(
    int level, const std::vector<std::string>& gens) const {
  std::vector<GroupElem> es;
  for (auto& g : gens) es.push_back(parse_element(level, g));
  return subgroup_presentation(level, es);
}

}  // namespace gfold
