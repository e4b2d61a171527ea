#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gfold/agraph.hpp"

namespace gfold {

// Breadth-first search over readings of powers of a cyclically reduced loop
// p in a folded A-graph: finds a B-path q from u1 to u2 and the minimal m > 0
// with mu(q) ~ prefix^{-1} p^m (prefix defaults to the identity).  Nodes are
// (B-vertex, position mod |p|); an edge labelled (f, c) into a given residue
// class is created at most once, which bounds the tree.
struct ReadPowerResult {
  BPath q;
  long long m = 0;
};

struct ReadPowerStats {
  long long nodes_explored = 0;
  std::vector<std::string> trace;  // one line per explored node when enabled
  // (f, c, head residue) of every tree edge created; no label repeats.
  std::vector<std::tuple<int, long long, int>> tree_edges;
};

std::optional<ReadPowerResult> read_power(
    const ExtensionChain& c, const AGraph& b, const APath& p, int u1, int u2,
    const std::optional<GroupElem>& prefix = std::nullopt,
    ReadPowerStats* stats = nullptr, bool want_trace = false);

}  // namespace gfold
