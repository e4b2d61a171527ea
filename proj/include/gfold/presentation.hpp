#pragma once

#include <string>
#include <vector>

#include "gfold/word.hpp"

namespace gfold {

// Finite presentation with named generators; each generator carries the
// printed value it represents in the ambient group.
struct Presentation {
  struct Gen {
    std::string name;
    std::string value;
  };
  std::vector<Gen> gens;
  std::vector<Word> relators;  // over generator indices 1..gens.size()

  int rank() const { return static_cast<int>(gens.size()); }

  // Drop trivial relators, and eliminate generators pinned by a relator of
  // the form g * w^{-1} with w not involving g.
  void simplify();

  // Invariant factors of the abelianization (d1 | d2 | ...), zeros for free
  // summands; e.g. Z^2 gives {0, 0}.
  std::vector<long long> abelian_invariants() const;
  int abelian_free_rank() const;

  std::string str() const;
};

}  // namespace gfold
