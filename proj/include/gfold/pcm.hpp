#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gfold/agraph.hpp"

namespace gfold {

// Power coset membership in the fundamental group of a chain graph: the
// minimal-|m| nonzero m with g^m ∈ xH, positive preferred on ties, together
// with the reading that witnesses it.
struct PcmResult {
  long long m = 0;
  std::string witness;  // printed witness B-path (in transported coordinates)
};

std::optional<PcmResult> pcm(const ExtensionChain& c, int graph_index,
                             int base_vertex, const std::vector<APath>& hgens,
                             const APath& x, const APath& g,
                             bool want_witness = false,
                             std::vector<std::string>* trace = nullptr);

// xH ∩ <g> nonempty: power coset membership or plain membership of x.
bool coset_meets_cyclic(const ExtensionChain& c, int graph_index,
                        int base_vertex, const std::vector<APath>& hgens,
                        const APath& x, const APath& g);

// Line-oriented report `PASS|FAIL|ASSUME <hypothesis> <location>` covering
// the mechanically checkable effectivity hypotheses of the chain.
std::vector<std::string> benign_check(const ExtensionChain& c);

}  // namespace gfold
