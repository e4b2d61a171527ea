#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gfold/abvec.hpp"
#include "gfold/word.hpp"

namespace gfold {

class ExtensionChain;
struct APath;

// Vertex-group descriptor: a free group of a given rank, a free abelian group
// of a given rank, or the fundamental group of a lower chain graph (elements
// are loops at vertex 0 of chain.graph(graph_index)).
struct VertexGroupRef {
  enum class Kind { Free, Abelian, Pi };
  Kind kind = Kind::Free;
  int param = 0;  // rank for Free/Abelian, graph index for Pi

  static VertexGroupRef free_group(int rank) {
    return {Kind::Free, rank};
  }
  static VertexGroupRef abelian(int rank) { return {Kind::Abelian, rank}; }
  static VertexGroupRef pi(int graph_index) { return {Kind::Pi, graph_index}; }
  bool operator==(const VertexGroupRef& o) const {
    return kind == o.kind && param == o.param;
  }
  std::string str() const;
};

// Element of some vertex group.  Values are immutable; paths are shared.
class GroupElem {
 public:
  GroupElem() : v_(Word()) {}
  explicit GroupElem(Word w) : v_(std::move(w)) {}
  explicit GroupElem(AbVec v) : v_(std::move(v)) {}
  explicit GroupElem(APath p);

  bool is_word() const { return std::holds_alternative<Word>(v_); }
  bool is_vec() const { return std::holds_alternative<AbVec>(v_); }
  bool is_path() const {
    return std::holds_alternative<std::shared_ptr<const APath>>(v_);
  }
  const Word& word() const { return std::get<Word>(v_); }
  const AbVec& vec() const { return std::get<AbVec>(v_); }
  const APath& path() const;

 private:
  std::variant<Word, AbVec, std::shared_ptr<const APath>> v_;
};

// Path in a graph of groups: alternating vertex-group elements and edges.
// elems has one more entry than edges; elems[i] lies in the vertex group at
// the endpoint of edges[i-1] (elems[0] at the start vertex).
struct APath {
  int graph = 0;  // index of the chain graph this path lives over
  int start = 0;
  std::vector<GroupElem> elems;
  std::vector<int> edges;  // half-edge ids

  int length() const { return static_cast<int>(edges.size()); }
};

// Two-vertex (in general, arbitrary) graph of groups with infinite cyclic
// edge groups; per half-edge the image of the canonical edge generator in the
// origin vertex group.
struct GraphOfGroups {
  std::vector<VertexGroupRef> verts;
  struct HalfEdge {
    int from, to;
    int partner;
    GroupElem alpha_img;  // alpha_e(c_e), element of the origin vertex group
  };
  std::vector<HalfEdge> edges;

  int o(int e) const { return edges[static_cast<size_t>(e)].from; }
  int t(int e) const { return edges[static_cast<size_t>(e)].to; }
  int inv(int e) const { return edges[static_cast<size_t>(e)].partner; }
  // omega_e(c_e) = alpha_{e^{-1}}(c_e), element of the target vertex group.
  const GroupElem& omega_img(int e) const {
    return edges[static_cast<size_t>(inv(e))].alpha_img;
  }
  const GroupElem& alpha_img(int e) const {
    return edges[static_cast<size_t>(e)].alpha_img;
  }
};

// --- vertex-group element operations (dispatch on the group kind) ---

GroupElem elem_identity(const ExtensionChain& c, const VertexGroupRef& ref);
GroupElem elem_mul(const ExtensionChain& c, const VertexGroupRef& ref,
                   const GroupElem& a, const GroupElem& b);
GroupElem elem_inv(const ExtensionChain& c, const VertexGroupRef& ref,
                   const GroupElem& a);
GroupElem elem_pow(const ExtensionChain& c, const VertexGroupRef& ref,
                   const GroupElem& a, long long n);
bool elem_trivial(const ExtensionChain& c, const VertexGroupRef& ref,
                  const GroupElem& a);
bool elem_equal(const ExtensionChain& c, const VertexGroupRef& ref,
                const GroupElem& a, const GroupElem& b);
// n with a == base^n; trivial a yields 0.
std::optional<long long> elem_power_of(const ExtensionChain& c,
                                       const VertexGroupRef& ref,
                                       const GroupElem& a,
                                       const GroupElem& base);
std::string elem_str(const ExtensionChain& c, const VertexGroupRef& ref,
                     const GroupElem& a);

// --- path operations ---

APath path_identity(const ExtensionChain& c, int graph, int vertex);
APath make_path(const ExtensionChain& c, int graph, int start,
                std::vector<GroupElem> elems, std::vector<int> edges);
void check_path(const ExtensionChain& c, const APath& p);
int path_end(const ExtensionChain& c, const APath& p);

APath path_reduce(const ExtensionChain& c, const APath& p);
APath path_mul(const ExtensionChain& c, const APath& a, const APath& b);
APath path_inv(const ExtensionChain& c, const APath& a);
APath path_pow(const ExtensionChain& c, const APath& a, long long n);
bool path_is_trivial(const ExtensionChain& c, const APath& p);
bool path_equal(const ExtensionChain& c, const APath& a, const APath& b);

// Literal m-fold concatenation of a cyclically reduced loop, reduced by
// construction; m may be negative (power of the inverse).
APath power_path(const ExtensionChain& c, const APath& p, long long m);

// (core, conj) with p ~ conj * core * conj^{-1}, core cyclically reduced.
std::pair<APath, APath> cyclically_reduce(const ExtensionChain& c,
                                          const APath& p);

// n with p ~ base^n (as group elements); trivial p yields 0.
std::optional<long long> path_power_of(const ExtensionChain& c, const APath& p,
                                       const APath& base);

std::string path_str(const ExtensionChain& c, const APath& p);

// APath literal: `<p0> ; e<k> ; <p1> ; ...` with `e<k>^-1` for inverse edges.
APath parse_path(const ExtensionChain& c, int graph, int start,
                 const std::string& text);

}  // namespace gfold
