#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gfold/chain.hpp"
#include "gfold/gog.hpp"
#include "gfold/presentation.hpp"

namespace gfold {

// Graph mapped onto a chain graph A, with a subgroup of A_[u] at each vertex
// (given by generators) and group-element labels on half-edges.  Each vertex
// generator and each half-edge carries a decoration: a word over the symbol
// alphabet (one symbol per defining generator, plus a reserved trailing
// symbol for the coset representative when present) expressing the loop it
// contributes, so paths read off constructive membership expressions.
struct AGraph {
  struct Vertex {
    int type = 0;  // vertex id in A
    std::vector<GroupElem> gens;
    std::vector<Word> exprs;
    bool alive = true;
  };
  struct Edge {  // half-edge; partner carries the reverse sense
    int type = 0;  // half-edge id in A
    int from = 0, to = 0;
    GroupElem alpha;  // f_alpha in A_[from]
    Word expr;        // decoration in this sense; inverse kept on partner
    int partner = 0;
    bool alive = true;
  };

  int graph_index = 0;  // the chain graph this lives over
  int nsymbols = 0;
  std::vector<Vertex> verts;
  std::vector<Edge> edges;
  int u0 = 0;
  int ux = -1;

  bool distinguished(int v) const { return v == u0 || v == ux; }
  int o(int e) const { return edges[static_cast<size_t>(e)].from; }
  int t(int e) const { return edges[static_cast<size_t>(e)].to; }
  int inv(int e) const { return edges[static_cast<size_t>(e)].partner; }

  std::string to_text(const ExtensionChain& c) const;
};

// Path in an A-graph; elems[i] lies in the vertex group B at the appropriate
// stop (as an element of the ambient vertex group of A).
struct BPath {
  int start = 0;
  std::vector<GroupElem> elems;
  std::vector<int> edges;

  int length() const { return static_cast<int>(edges.size()); }
};

int bpath_end(const AGraph& b, const BPath& q);

// f_omega of a half-edge: inverse of the partner's alpha label.
GroupElem edge_omega(const ExtensionChain& c, const AGraph& b, int e);

// The associated path in A:
// <q0 (f1)_a, [f1], (f1)_w q1 (f2)_a, ..., (fm)_w qm>.
APath mu(const ExtensionChain& c, const AGraph& b, const BPath& q);

// Decoration product along q: expression of mu(q)'s class over the symbol
// alphabet (valid between distinguished vertices).
Word psi(const ExtensionChain& c, const AGraph& b, const BPath& q);

// B_f = <c^k> with k = 0 encoding the trivial edge group.
long long edge_group(const ExtensionChain& c, const AGraph& b, int e);

// Foldedness witness: which condition fails and where.
struct FoldWitness {
  enum class What { MergePair, InversePair, EdgeGroupMismatch } what;
  int u = -1;       // vertex of the condition
  int f1 = -1;      // half-edge into u (MergePair/InversePair), or the edge
  int f2 = -1;      // half-edge out of u (MergePair)
  GroupElem b;      // witness element of B_u
  Word b_expr;      // its expression over B_u generators
  long long n = 0;  // edge-generator exponent of the witness
};

std::optional<FoldWitness> find_unfolded(const ExtensionChain& c,
                                         const AGraph& b);
bool is_folded(const ExtensionChain& c, const AGraph& b);

// Folding outcome: either the folded graph, or (for coset graphs) a length-0
// element y with yH = xH, produced when the pending move would identify ux
// with u0.
struct FoldOutcome {
  std::optional<AGraph> graph;
  std::optional<GroupElem> y;  // element of the base vertex group
};

FoldOutcome fold(const ExtensionChain& c, AGraph b);

// Start graph of a subgroup: base vertex plus one subdivided loop per
// positive-length generator; length-0 generators populate B_{u0}.
AGraph start_graph(const ExtensionChain& c, int graph_index, int base_vertex,
                   const std::vector<APath>& gens);

AGraph build_subgroup_graph(const ExtensionChain& c, int graph_index,
                            int base_vertex, const std::vector<APath>& gens);

struct CosetGraphResult {
  std::optional<GroupElem> y;
  std::optional<AGraph> graph;
};

CosetGraphResult build_coset_graph(const ExtensionChain& c, int graph_index,
                                   int base_vertex,
                                   const std::vector<APath>& gens,
                                   const APath& x);

// Some B-path q from `from` to `to` with mu(q) ~ p, if one exists.
std::optional<BPath> read_membership(const ExtensionChain& c, const AGraph& b,
                                     int from, int to, const APath& p);

Presentation extract_presentation(const ExtensionChain& c, const AGraph& b);

class VertexOracle;

// Presentation of pi_1(B, u0) plus the data needed to rewrite a B-path as a
// word over the presentation generators: per-vertex generator offsets, one
// stable letter per non-tree edge pair, and the vertex-group oracles whose
// local presentations supplied the vertex generators.
struct PresReader {
  Presentation pres;
  std::vector<GroupElem> values;  // ambient value of each generator
  std::shared_ptr<const AGraph> graph;
  std::vector<int> vert_offset;                         // -1 for dead vertices
  std::vector<std::shared_ptr<VertexOracle>> voracle;   // per vertex
  std::vector<int> stable;                              // per half-edge, signed index or 0
};

PresReader extract_presentation_reader(const ExtensionChain& c,
                                       std::shared_ptr<const AGraph> b);

// Word over the presentation generators representing the loop q, or nullopt
// if some stop's element fails its vertex-group membership.
std::optional<Word> reader_express(const ExtensionChain& c,
                                   const PresReader& r, const BPath& q);

}  // namespace gfold
