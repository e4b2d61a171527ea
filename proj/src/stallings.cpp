#include "gfold/stallings.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "gfold/errors.hpp"

namespace gfold {

namespace {

// Mutable edge-list graph used only while folding the wedge of generator
// loops.  Edges are stored once, in the u -> v sense, with a decoration over
// the generator symbols; the v -> u sense uses the inverse letter and the
// inverse decoration.
struct BuildGraph {
  struct Edge {
    int u, v;
    int letter;  // signed, the u -> v label
    Word dec;    // over gen symbols, u -> v sense
    bool alive = true;
  };

  std::vector<int> uf;
  std::vector<Edge> edges;

  int find(int x) {
    while (uf[static_cast<size_t>(x)] != x) {
      uf[static_cast<size_t>(x)] = uf[static_cast<size_t>(uf[static_cast<size_t>(x)])];
      x = uf[static_cast<size_t>(x)];
    }
    return x;
  }

  int fresh_vertex() {
    uf.push_back(static_cast<int>(uf.size()));
    return static_cast<int>(uf.size()) - 1;
  }
};

}  // namespace

StallingsAutomaton StallingsAutomaton::build(int rank,
                                             const std::vector<Word>& gens) {
  const int m = static_cast<int>(gens.size());
  BuildGraph g;
  g.fresh_vertex();  // base = 0

  for (int i = 0; i < m; ++i) {
    const Word& w = gens[static_cast<size_t>(i)];
    if (w.rank() != rank)
      throw PreconditionError("generator rank mismatch in stallings build");
    if (w.trivial()) continue;
    int prev = 0;
    for (int j = 0; j < w.length(); ++j) {
      int tgt = j + 1 == w.length() ? 0 : g.fresh_vertex();
      Word dec = j + 1 == w.length() ? Word::letter(m, i + 1)
                                     : Word::identity(m);
      g.edges.push_back({prev, tgt, w.letters()[static_cast<size_t>(j)],
                         std::move(dec), true});
      prev = tgt;
    }
  }

  // Fold: while two live edges leave one vertex class with the same letter,
  // merge their far endpoints and correct decorations with the connector
  // zeta = dec(e1)^{-1} dec(e2), which evaluates to gamma(t1) gamma(t2)^{-1}.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, int>, size_t> seen;  // (vertex class, letter) -> edge
    for (size_t ei = 0; ei < g.edges.size() && !changed; ++ei) {
      auto& e = g.edges[ei];
      if (!e.alive) continue;
      for (int sense = 0; sense < 2 && !changed; ++sense) {
        int from = g.find(sense == 0 ? e.u : e.v);
        int letter = sense == 0 ? e.letter : -e.letter;
        auto key = std::make_pair(from, letter);
        auto it = seen.find(key);
        if (it == seen.end()) {
          seen.emplace(key, ei * 2 + static_cast<size_t>(sense));
          continue;
        }
        size_t code = it->second;
        auto& e1 = g.edges[code / 2];
        bool s1 = code % 2 == 1;
        int t1 = g.find(s1 ? e1.u : e1.v);
        int t2 = g.find(sense == 1 ? e.u : e.v);
        Word d1 = s1 ? e1.dec.inverse() : e1.dec;
        Word d2 = sense == 1 ? e.dec.inverse() : e.dec;
        Word zeta = d1.inverse() * d2;
        e.alive = false;
        if (t2 == g.find(0) && t1 != t2) {
          // Keep the base's canonical path value trivial: merge into t2.
          std::swap(t1, t2);
          zeta = zeta.inverse();
        }
        if (t1 != t2) {
          // Re-home t2's incidences onto t1, fixing decorations.
          for (auto& h : g.edges) {
            if (!h.alive) continue;
            bool at_u = g.find(h.u) == t2;
            bool at_v = g.find(h.v) == t2;
            if (at_u) h.dec = zeta * h.dec;
            if (at_v) h.dec = h.dec * zeta.inverse();
          }
          g.uf[static_cast<size_t>(t2)] = t1;
        }
        changed = true;
      }
    }
  }

  // Trim: repeatedly drop non-base vertices of degree <= 1.
  {
    bool trimmed = true;
    while (trimmed) {
      trimmed = false;
      std::map<int, int> degree;
      for (auto& e : g.edges) {
        if (!e.alive) continue;
        degree[g.find(e.u)]++;
        degree[g.find(e.v)]++;
      }
      for (auto& e : g.edges) {
        if (!e.alive) continue;
        int a = g.find(e.u), b = g.find(e.v);
        if ((a != 0 && degree[a] <= 1) || (b != 0 && degree[b] <= 1)) {
          e.alive = false;
          trimmed = true;
        }
      }
    }
  }

  // Compact with deterministic breadth-first numbering from the base.
  StallingsAutomaton out;
  out.rank_ = rank;
  out.gens_ = gens;
  std::map<int, std::map<int, std::pair<int, Word>>> adj;
  for (auto& e : g.edges) {
    if (!e.alive) continue;
    int a = g.find(e.u), b = g.find(e.v);
    adj[a][e.letter] = {b, e.dec};
    adj[b][-e.letter] = {a, e.dec.inverse()};
  }
  std::map<int, int> id;
  id[g.find(0)] = 0;
  std::deque<int> queue{g.find(0)};
  out.next_.emplace_back();
  out.decor_.emplace_back();
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (auto& [letter, tgt] : adj[v]) {
      if (!id.count(tgt.first)) {
        id[tgt.first] = static_cast<int>(out.next_.size());
        out.next_.emplace_back();
        out.decor_.emplace_back();
        queue.push_back(tgt.first);
      }
    }
  }
  for (auto& [v, trans] : adj) {
    for (auto& [letter, tgt] : trans) {
      out.next_[static_cast<size_t>(id[v])][letter] = id[tgt.first];
      out.decor_[static_cast<size_t>(id[v])][letter] = tgt.second;
    }
  }
  return out;
}

int StallingsAutomaton::step(int state, int letter) const {
  const auto& t = next_[static_cast<size_t>(state)];
  auto it = t.find(letter);
  return it == t.end() ? -1 : it->second;
}

bool StallingsAutomaton::contains(const Word& w) const {
  int s = 0;
  for (int l : w.letters()) {
    s = step(s, l);
    if (s < 0) return false;
  }
  return s == 0;
}

std::optional<Word> StallingsAutomaton::express(const Word& w) const {
  int s = 0;
  Word acc = Word::identity(gen_count());
  for (int l : w.letters()) {
    int t = step(s, l);
    if (t < 0) return std::nullopt;
    acc = acc * decor_[static_cast<size_t>(s)].at(l);
    s = t;
  }
  if (s != 0) return std::nullopt;
  return acc;
}

long long StallingsAutomaton::cyclic_exponent(const Word& c) const {
  if (c.trivial())
    throw PreconditionError("cyclic intersection against the trivial element");
  // c^m reduces to w core^m w^{-1}, which is reduced as written, so tracing
  // is decisive.  Follow the orbit of the post-conjugator state under core
  // reads, testing the w^{-1} tail at each step.
  auto [w, core] = c.cyclic_reduce();
  auto trace = [&](int state, const Word& x) {
    for (int l : x.letters()) {
      state = step(state, l);
      if (state < 0) return -1;
    }
    return state;
  };
  Word wi = w.inverse();
  int s = trace(0, w);
  if (s < 0) return 0;
  std::vector<int> seen{s};
  for (long long k = 1; k <= state_count() + 1; ++k) {
    s = trace(s, core);
    if (s < 0) return 0;
    if (trace(s, wi) == 0) return k;
    if (std::find(seen.begin(), seen.end(), s) != seen.end()) return 0;
    seen.push_back(s);
  }
  return 0;
}

std::optional<long long> StallingsAutomaton::power_coset(const Word& x,
                                                         const Word& g) const {
  if (g.trivial()) throw PreconditionError("power coset with trivial g");
  long long period = cyclic_exponent(g);
  if (period > 0) {
    // Solutions of g^m ∈ xH form a single residue class mod period.
    for (long long r = 0; r < period; ++r) {
      if (contains(x.inverse() * g.pow(r))) {
        if (r == 0) return period;
        return r <= period - r ? r : r - period;
      }
    }
    return std::nullopt;
  }
  // Trivial H ∩ <g>: at most one solution, and an excision argument on the
  // folded automaton bounds it by the state count plus the damping of x and
  // the conjugating part of g.
  auto [conj, core] = g.cyclic_reduce();
  long long bound = state_count() + 2 +
                    (x.length() + 2 * conj.length() + core.length() - 1) /
                        core.length();
  for (long long m = 1; m <= bound; ++m) {
    if (contains(x.inverse() * g.pow(m))) return m;
    if (contains(x.inverse() * g.pow(-m))) return -m;
  }
  return std::nullopt;
}

std::optional<StallingsAutomaton::CosetHit>
StallingsAutomaton::coset_intersect_cyclic(const Word& a, const Word& c) const {
  if (c.trivial())
    throw PreconditionError("coset intersection against the trivial element");
  if (contains(a)) return CosetHit{0, a, *express(a)};
  auto m = power_coset(a.inverse(), c);
  if (!m) return std::nullopt;
  Word elem = a * c.pow(*m);
  return CosetHit{*m, elem, *express(elem)};
}

void StallingsAutomaton::compute_tree(
    std::vector<int>* parent, std::vector<int>* parent_letter,
    std::vector<std::map<int, int>>* basis_index) const {
  parent->assign(static_cast<size_t>(state_count()), -1);
  parent_letter->assign(static_cast<size_t>(state_count()), 0);
  basis_index->assign(static_cast<size_t>(state_count()), {});
  std::vector<bool> visited(static_cast<size_t>(state_count()), false);
  visited[0] = true;
  std::deque<int> queue{0};
  std::vector<std::pair<int, int>> tree_edges;  // (state, letter)
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (auto& [letter, t] : next_[static_cast<size_t>(v)]) {
      if (!visited[static_cast<size_t>(t)]) {
        visited[static_cast<size_t>(t)] = true;
        (*parent)[static_cast<size_t>(t)] = v;
        (*parent_letter)[static_cast<size_t>(t)] = letter;
        queue.push_back(t);
      }
    }
  }
  int idx = 0;
  for (int v = 0; v < state_count(); ++v) {
    for (auto& [letter, t] : next_[static_cast<size_t>(v)]) {
      bool is_tree = ((*parent)[static_cast<size_t>(t)] == v &&
                      (*parent_letter)[static_cast<size_t>(t)] == letter) ||
                     ((*parent)[static_cast<size_t>(v)] == t &&
                      (*parent_letter)[static_cast<size_t>(v)] == -letter);
      if (is_tree) continue;
      // Index each non-tree geometric edge once, in its positive sense.
      if (letter < 0) continue;
      (*basis_index)[static_cast<size_t>(v)][letter] = ++idx;
    }
  }
}

std::vector<Word> StallingsAutomaton::tree_basis() const {
  std::vector<int> parent, parent_letter;
  std::vector<std::map<int, int>> basis_index;
  compute_tree(&parent, &parent_letter, &basis_index);
  auto path_to = [&](int v) {
    std::vector<int> letters;
    while (v != 0) {
      letters.push_back(parent_letter[static_cast<size_t>(v)]);
      v = parent[static_cast<size_t>(v)];
    }
    std::reverse(letters.begin(), letters.end());
    return Word(rank_, letters);
  };
  std::vector<Word> basis;
  for (int v = 0; v < state_count(); ++v)
    for (auto& [letter, idx] : basis_index[static_cast<size_t>(v)])
      basis.push_back(path_to(v) * Word::letter(rank_, letter) *
                      path_to(next_[static_cast<size_t>(v)].at(letter)).inverse());
  return basis;
}

std::optional<Word> StallingsAutomaton::express_in_basis(const Word& w) const {
  std::vector<int> parent, parent_letter;
  std::vector<std::map<int, int>> basis_index;
  compute_tree(&parent, &parent_letter, &basis_index);
  int s = 0;
  std::vector<int> out;
  int nbasis = 0;
  for (auto& per_state : basis_index)
    for (auto& kv : per_state) nbasis = std::max(nbasis, kv.second);
  for (int l : w.letters()) {
    int t = step(s, l);
    if (t < 0) return std::nullopt;
    if (l > 0) {
      auto it = basis_index[static_cast<size_t>(s)].find(l);
      if (it != basis_index[static_cast<size_t>(s)].end()) out.push_back(it->second);
    } else {
      auto it = basis_index[static_cast<size_t>(t)].find(-l);
      if (it != basis_index[static_cast<size_t>(t)].end()) out.push_back(-it->second);
    }
    s = t;
  }
  if (s != 0) return std::nullopt;
  return Word(nbasis, out);
}

std::string StallingsAutomaton::to_text() const {
  std::ostringstream os;
  os << "states " << state_count() << "\n";
  for (int v = 0; v < state_count(); ++v)
    for (auto& [letter, t] : next_[static_cast<size_t>(v)])
      if (letter > 0)
        os << v << " -" << Word::letter(rank_, letter).str() << "-> " << t
           << "\n";
  return os.str();
}

}  // namespace gfold
