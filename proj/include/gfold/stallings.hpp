#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfold/word.hpp"

namespace gfold {

// Folded core automaton of a finitely generated subgroup of a free group.
// State 0 is the base state.  Every transition carries a decoration: a word
// over the defining generators g1..gm whose evaluation equals
// gamma(o) * letter * gamma(t)^{-1} for canonical path values gamma, so the
// decoration product along an accepted loop expresses the loop's label as a
// product of the defining generators.
class StallingsAutomaton {
 public:
  static StallingsAutomaton build(int rank, const std::vector<Word>& gens);

  int rank() const { return rank_; }
  int gen_count() const { return static_cast<int>(gens_.size()); }
  const std::vector<Word>& gens() const { return gens_; }
  int state_count() const { return static_cast<int>(next_.size()); }

  // Target state of the (partial) transition, -1 if absent.
  int step(int state, int letter) const;

  bool contains(const Word& w) const;

  // Expression of w over the defining generators (rank = gen_count()).
  std::optional<Word> express(const Word& w) const;

  // k >= 0 with H ∩ <c> = <c^k>; 0 encodes the trivial intersection.
  long long cyclic_exponent(const Word& c) const;

  // Minimal-|m| nonzero m with g^m ∈ xH, positive preferred on ties.
  std::optional<long long> power_coset(const Word& x, const Word& g) const;

  // Some n (possibly 0) with a*c^n ∈ H, plus that element's expression.
  struct CosetHit {
    long long n;
    Word element;  // a*c^n, reduced
    Word expr;     // over defining generators
  };
  std::optional<CosetHit> coset_intersect_cyclic(const Word& a,
                                                 const Word& c) const;

  // Free basis read off a breadth-first spanning tree (one element per
  // non-tree transition), and expressions of accepted words over it.
  std::vector<Word> tree_basis() const;
  std::optional<Word> express_in_basis(const Word& w) const;

  std::string to_text() const;

 private:
  int rank_ = 0;
  std::vector<Word> gens_;
  // next_[s][l] = target; decor_[s][l] = decoration of that transition in the
  // s -> target sense.  Both directions of each edge are stored and kept
  // mutually inverse.
  std::vector<std::map<int, int>> next_;
  std::vector<std::map<int, Word>> decor_;

  void compute_tree(std::vector<int>* parent, std::vector<int>* parent_letter,
                    std::vector<std::map<int, int>>* basis_index) const;
};

}  // namespace gfold
