#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gfold/chain.hpp"

namespace gfold {

// Bounded test oracles.  A negative answer only means not-found-within-bound;
// exact negatives come from the abelianization certificate below.

// True if some product of at most maxlen factors from H ∪ H^{-1} equals x.
bool brute_membership(const ExtensionChain& c, int level,
                      const std::vector<GroupElem>& hgens, const GroupElem& x,
                      int maxlen);

// Minimal-|m| m in [-maxm, maxm] \ {0} with x^{-1} g^m ∈ H found within the
// length bound; positive preferred on ties.
std::optional<long long> brute_pcm(const ExtensionChain& c, int level,
                                   const std::vector<GroupElem>& hgens,
                                   const GroupElem& x, const GroupElem& g,
                                   int maxm, int maxlen);

// Exact negative certificate: no integer m (in the allowed set) solves
// m*gbar ≡ xbar modulo the abelianized subgroup lattice.
bool abelian_pcm_impossible(const ExtensionChain& c, int level,
                            const std::vector<GroupElem>& hgens,
                            const GroupElem& x, const GroupElem& g);
bool abelian_nonmember(const ExtensionChain& c, int level,
                       const std::vector<GroupElem>& hgens, const GroupElem& x);

// Confluent shortlex rewriting for the rank-2, one-extension chain
// <a, b, t | [a, t]>: letters a, b, t over {±1, ±2, ±3}.  Two words are equal
// in the group iff their normal forms coincide.
class KbSystem {
 public:
  KbSystem();  // builds the rule set and certifies local confluence
  Word normal_form(const Word& w) const;  // w over rank 3: a, b, t
  bool trivial(const Word& w) const { return normal_form(w).trivial(); }
  bool equal(const Word& u, const Word& v) const {
    return normal_form(u) == normal_form(v);
  }

 private:
  struct Rule {
    std::vector<int> lhs, rhs;
  };
  std::vector<Rule> rules_;
  std::vector<int> rewrite(std::vector<int> w) const;
  void certify_confluence() const;
};

}  // namespace gfold
