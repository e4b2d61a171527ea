#pragma once

#include <optional>
#include <vector>

#include "gfold/agraph.hpp"

namespace gfold {

// l_c = alpha_e(c_e^c) * f_alpha^{-1}, an element of A_[o(f)].
GroupElem left_adjustment(const ExtensionChain& c, const AGraph& b, int f,
                          long long cexp);
// r_c = f_omega^{-1} * omega_e(c_e^{-c}), an element of A_[t(f)].
GroupElem right_adjustment(const ExtensionChain& c, const AGraph& b, int f,
                           long long cexp);

// Canonical adjustment set C(f, a) as edge-generator exponents, each with the
// witness a*l_c ∈ B_{o(f)} and its expression over the vertex generators.
// For trivial B_f the set is the at-most-one canonical solution; for
// B_f = <c^k> it is the subset of residues 0..k-1 that land in B_{o(f)}.
struct Adjustment {
  long long cexp;
  GroupElem element;
  Word expr;
};
std::vector<Adjustment> canonical_adjustments(const ExtensionChain& c,
                                              const AGraph& b, int f,
                                              const GroupElem& a);

// Q(sigma) for an edge path and adjustment exponents; empty sigma yields the
// length-0 path <p0>.
BPath apply_sequence(const ExtensionChain& c, const AGraph& b, const APath& p,
                     const std::vector<int>& edges,
                     const std::vector<long long>& cexps);

// All semi-canonical B-paths from u1 to u2 whose image is equivalent to p
// (up to `limit` of them).  Empty iff no reading of p exists.
std::vector<BPath> enumerate_sc(const ExtensionChain& c, const AGraph& b,
                                const APath& p, int u1, int u2,
                                size_t limit = static_cast<size_t>(-1));

std::optional<BPath> sc_first(const ExtensionChain& c, const AGraph& b,
                              const APath& p, int u1, int u2);

}  // namespace gfold
