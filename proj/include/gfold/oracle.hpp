#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gfold/chain.hpp"
#include "gfold/gog.hpp"
#include "gfold/lattice.hpp"
#include "gfold/presentation.hpp"
#include "gfold/stallings.hpp"

namespace gfold {

struct AGraph;
struct PresReader;

// Effective subgroup oracle for one vertex group and one ordered generating
// set: Stallings automaton for free groups, HNF lattice for free abelian
// groups, and a folded subgroup graph (driven by the power-coset machinery
// one level down) for fundamental-group vertex kinds.
class VertexOracle {
 public:
  VertexOracle(const ExtensionChain& chain, VertexGroupRef ref,
               std::vector<GroupElem> gens);
  ~VertexOracle();

  const VertexGroupRef& ref() const { return ref_; }
  const std::vector<GroupElem>& gens() const { return gens_; }

  // Expression over the defining generators on success.
  std::optional<Word> membership(const GroupElem& w) const;

  // k >= 0 with H ∩ <c> = <c^k>.
  long long cyclic_exponent(const GroupElem& c) const;

  struct Hit {
    long long n;
    GroupElem element;  // a * c^n, a member of H
    Word expr;          // over the defining generators
  };
  // Some element of H ∩ a<c> (n may be 0).  c may be trivial, in which case
  // this is plain membership of a.
  std::optional<Hit> coset_intersect_cyclic(const GroupElem& a,
                                            const GroupElem& c) const;

  // Minimal-|m| nonzero m with g^m ∈ xH, positive preferred on ties.
  std::optional<long long> power_coset(const GroupElem& x,
                                       const GroupElem& g) const;

  // Presentation of H: generator values (elements of the vertex group),
  // relators over them, and expressions of members over them.
  struct LocalPresentation {
    std::vector<GroupElem> values;
    std::vector<Word> relators;
  };
  const LocalPresentation& local_presentation() const;
  std::optional<Word> express_local(const GroupElem& w) const;

  // The folded subgroup graph backing a Pi-kind oracle.
  std::shared_ptr<const AGraph> pi_graph() const;

 private:
  const ExtensionChain& chain_;
  VertexGroupRef ref_;
  std::vector<GroupElem> gens_;
  bool all_trivial_ = false;

  std::optional<StallingsAutomaton> aut_;
  std::optional<Lattice> lat_;
  std::shared_ptr<const AGraph> pi_;
  mutable std::shared_ptr<const PresReader> reader_;

  mutable std::optional<LocalPresentation> local_pres_;
  mutable std::map<std::string, std::optional<Word>> member_cache_;
  mutable std::map<std::string, long long> cyc_cache_;

  std::string key(const GroupElem& e) const;
};

}  // namespace gfold
